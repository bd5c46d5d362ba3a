//! Matrix representations of a Lie algebra and their verification.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lie_algebra::LieAlgebra;
use crate::linalg::{kernel_basis, Accumulator, Matrix, SparseMatrix, SparseVec, Subspace};

/// Which construction produced a representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "algorithm", rename_all = "lowercase", deny_unknown_fields)]
pub enum Provenance {
    Regular { pruned: bool },
    Quotient { reductions: usize },
    Dual,
    Affine { seed: u64, attempt: usize },
    /// Supplied from outside the library (for example a hand-edited file).
    External,
}

impl Provenance {
    pub fn name(&self) -> &'static str {
        match self {
            Provenance::Regular { .. } => "regular",
            Provenance::Quotient { .. } => "quotient",
            Provenance::Dual => "dual",
            Provenance::Affine { .. } => "affine",
            Provenance::External => "external",
        }
    }
}

/// `x_i ↦ M_i` on `K^n`, matrices acting on column vectors, for the basis of
/// `algebra` as given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation<F: Field> {
    algebra: LieAlgebra<F>,
    dim: usize,
    matrices: Vec<SparseMatrix<F>>,
    provenance: Provenance,
}

impl<F: Field> Representation<F> {
    pub fn new(algebra: LieAlgebra<F>, dim: usize, matrices: Vec<SparseMatrix<F>>, provenance: Provenance) -> Result<Self> {
        if matrices.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                found: matrices.len(),
            });
        }
        for m in &matrices {
            if m.field() != algebra.field() {
                return Err(Error::FieldMismatch);
            }
            if m.nrows() != dim || m.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: if m.nrows() != dim { m.nrows() } else { m.ncols() },
                });
            }
        }
        Ok(Representation {
            algebra,
            dim,
            matrices,
            provenance,
        })
    }

    pub fn zero(algebra: LieAlgebra<F>, dim: usize) -> Self {
        let matrices = (0..algebra.dim())
            .map(|_| SparseMatrix::zeros(algebra.field().clone(), dim, dim))
            .collect();
        Representation {
            algebra,
            dim,
            matrices,
            provenance: Provenance::External,
        }
    }

    /// Re-expresses matrices given for an adapted basis `b_k` (the columns
    /// of `change_of_basis`) in the original basis:
    /// `M(x_j) = Σ_k (P^{-1})_{kj} M(b_k)`.
    pub fn from_adapted(
        algebra: LieAlgebra<F>,
        dim: usize,
        adapted: &[SparseMatrix<F>],
        inverse: &Matrix<F>,
        provenance: Provenance,
    ) -> Result<Self> {
        let d = algebra.dim();
        let f = algebra.field().clone();
        let matrices = (0..d)
            .map(|j| {
                let terms: Vec<_> = (0..d)
                    .filter(|&k| !f.is_zero(inverse.get(k, j)))
                    .map(|k| (inverse.get(k, j).clone(), &adapted[k]))
                    .collect();
                SparseMatrix::linear_combination(&f, dim, dim, &terms)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(algebra, dim, matrices, provenance)
    }

    pub fn algebra(&self) -> &LieAlgebra<F> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn matrices(&self) -> &[SparseMatrix<F>] {
        &self.matrices
    }
    pub fn matrix(&self, i: usize) -> &SparseMatrix<F> {
        &self.matrices[i]
    }
    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// Image `Σ ξ_i M_i` of an algebra element.
    pub fn image(&self, xi: &SparseVec<F::Elem>) -> Result<SparseMatrix<F>> {
        let terms: Vec<_> = xi.iter().map(|(i, c)| (c.clone(), &self.matrices[*i])).collect();
        SparseMatrix::linear_combination(self.field(), self.dim, self.dim, &terms)
    }

    /// `Ok(())` if `[M_i, M_j] = Σ_k c_ij^k M_k` for all `i < j`, else the
    /// first failing pair (0-based).
    pub fn is_homomorphism(&self) -> std::result::Result<(), (usize, usize)> {
        let d = self.algebra.dim();
        for i in 0..d {
            for j in (i + 1)..d {
                let lhs = self.matrices[i].commutator(&self.matrices[j]).expect("same shape");
                let rhs = self.image(self.algebra.bracket_basis(i, j)).expect("same shape");
                if lhs != rhs {
                    return Err((i, j));
                }
            }
        }
        Ok(())
    }

    /// `{ξ : Σ ξ_i M_i = 0}`.
    pub fn kernel(&self) -> Subspace<F> {
        let f = self.field();
        let d = self.algebra.dim();
        let mut equations: HashMap<(usize, usize), Accumulator<F>> = HashMap::new();
        for (i, m) in self.matrices.iter().enumerate() {
            for (r, row) in m.rows().iter().enumerate() {
                for (c, v) in row {
                    equations.entry((r, *c)).or_default().add(f, i, v);
                }
            }
        }
        let mut keys: Vec<_> = equations.keys().copied().collect();
        keys.sort_unstable();
        let rows: Vec<_> = keys
            .into_iter()
            .map(|k| equations.remove(&k).expect("present").finish(f))
            .collect();
        Subspace::from_sparse(f.clone(), d, &kernel_basis(f, d, &rows))
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().is_zero()
    }

    /// `{v : x·v = 0 for all x}`.
    pub fn annihilated_subspace(&self) -> Subspace<F> {
        let f = self.field();
        let rows: Vec<SparseVec<F::Elem>> = self.matrices.iter().flat_map(|m| m.rows().iter().cloned()).collect();
        Subspace::from_sparse(f.clone(), self.dim, &kernel_basis(f, self.dim, &rows))
    }

    /// `{z·v : z ∈ Z(g), v ∈ V}`.
    pub fn center_image(&self) -> Subspace<F> {
        let f = self.field();
        let mut columns = Vec::new();
        for z in self.algebra.center().basis() {
            let mz = self.image(z).expect("same shape");
            columns.extend(mz.columns().into_iter().filter(|c| !c.is_empty()));
        }
        Subspace::from_sparse(f.clone(), self.dim, &columns)
    }

    /// `M_i ↦ P M_i P^{-1}`.
    pub fn conjugate(&self, p: &Matrix<F>) -> Result<Self> {
        if p.nrows() != self.dim || p.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.nrows(),
            });
        }
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidParameter("conjugating matrix is singular".into()))?;
        let f = self.field().clone();
        let ps = SparseMatrix::from_rows(f.clone(), self.dim, p.sparse_rows());
        let pinv = SparseMatrix::from_rows(f, self.dim, inv.sparse_rows());
        let matrices = self
            .matrices
            .iter()
            .map(|m| ps.mul(m)?.mul(&pinv))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.algebra.clone(), self.dim, matrices, self.provenance.clone())
    }

    /// Every `M_i` is nilpotent.
    pub fn matrices_nilpotent(&self) -> bool {
        self.matrices.iter().all(|m| m.is_nilpotent_within(self.dim))
    }
}
