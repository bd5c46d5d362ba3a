//! Exact linear algebra over [`Field`](crate::field::Field)s.

mod dense;
mod echelon;
pub mod sparse;
mod subspace;

pub use dense::{Matrix, Solution};
pub use echelon::{kernel_basis, Echelon};
pub use sparse::{Accumulator, SparseMatrix, SparseVec};
pub use subspace::Subspace;
