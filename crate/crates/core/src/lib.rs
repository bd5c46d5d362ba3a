//! Faithful representations of nilpotent Lie algebras over `Q` and `F_p`.

pub mod affine;
pub mod catalog;
pub mod dual;
pub mod error;
pub mod field;
pub mod format;
pub mod lie_algebra;
pub mod linalg;
pub mod quotient;
pub mod regular;
pub mod representation;
pub mod tables;
pub mod uea;

pub use affine::{algorithm_affine, AffineConfig, AffineOutcome};
pub use dual::algorithm_dual;
pub use error::{Error, Result};
pub use format::{algebra_checksum, AlgebraFile, RepresentationFile};
pub use field::{Field, FieldKind, FieldSpec, PrimeField, Rationals};
pub use lie_algebra::{AdaptedBasis, CentralSeries, LayerOrder, LieAlgebra};
pub use quotient::algorithm_quotient;
pub use regular::{algorithm_regular, regular_unpruned};
pub use representation::{Provenance, Representation};
pub use uea::{Monomial, TruncatedUea};
