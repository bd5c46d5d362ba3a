use super::echelon::Echelon;
use super::sparse::{from_dense, to_dense, SparseVec};
use crate::error::{Error, Result};
use crate::field::Field;

/// A subspace of `K^n`, stored as its reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient_dim: usize,
    basis: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: F, ambient_dim: usize) -> Self {
        let one = field.one();
        Subspace {
            basis: (0..ambient_dim).map(|i| vec![(i, one.clone())]).collect(),
            pivots: (0..ambient_dim).collect(),
            field,
            ambient_dim,
        }
    }

    /// Span of arbitrary sparse vectors.
    pub fn from_sparse(field: F, ambient_dim: usize, vectors: &[SparseVec<F::Elem>]) -> Self {
        let mut ech = Echelon::new(field.clone(), ambient_dim);
        for v in vectors {
            ech.insert(v);
        }
        Self::from_echelon(ech)
    }

    pub fn span(field: F, ambient_dim: usize, vectors: &[Vec<F::Elem>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                found: v.len(),
            });
        }
        let sparse: Vec<_> = vectors.iter().map(|v| from_dense(&field, v)).collect();
        Ok(Self::from_sparse(field, ambient_dim, &sparse))
    }

    pub fn from_echelon(ech: Echelon<F>) -> Self {
        let field = ech.field().clone();
        let ambient_dim = ech.ncols();
        let (basis, pivots) = ech.into_rref();
        Subspace {
            field,
            ambient_dim,
            basis,
            pivots,
        }
    }

    /// Coordinate subspace spanned by the given standard basis vectors.
    pub fn coordinate(field: F, ambient_dim: usize, indices: &[usize]) -> Self {
        let one = field.one();
        let vecs: Vec<SparseVec<F::Elem>> = indices.iter().map(|&i| vec![(i, one.clone())]).collect();
        Self::from_sparse(field, ambient_dim, &vecs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn basis(&self) -> &[SparseVec<F::Elem>] {
        &self.basis
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_dense(&self) -> Vec<Vec<F::Elem>> {
        self.basis.iter().map(|v| to_dense(&self.field, v, self.ambient_dim)).collect()
    }

    fn echelon(&self) -> Echelon<F> {
        let mut ech = Echelon::new(self.field.clone(), self.ambient_dim);
        for v in &self.basis {
            ech.push_reduced(v.clone());
        }
        ech
    }

    /// Reduces `v` modulo this subspace (zero at every pivot column).
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        // Basis is fully reduced, so one pass over the pivots suffices.
        let mut out = v.clone();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if let Some(c) = super::sparse::get(&out, p).cloned() {
                out = super::sparse::axpy(&self.field, &out, &self.field.neg(&c), row);
            }
        }
        out
    }

    /// Coordinates of a member `v` with respect to the echelon basis.
    pub fn coordinates(&self, v: &SparseVec<F::Elem>) -> Option<Vec<F::Elem>> {
        if !self.reduce(v).is_empty() {
            return None;
        }
        Some(
            self.pivots
                .iter()
                .map(|&p| super::sparse::get(v, p).cloned().unwrap_or_else(|| self.field.zero()))
                .collect(),
        )
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_dense(&self, v: &[F::Elem]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        Ok(self.contains(&from_dense(&self.field, v)))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.basis.iter().all(|v| other.contains(v)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut ech = self.echelon();
        for v in &other.basis {
            ech.insert(v);
        }
        Ok(Self::from_echelon(ech))
    }

    /// Exact intersection via the Zassenhaus construction on `K^n ⊕ K^n`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.ambient_dim;
        let mut ech = Echelon::new(self.field.clone(), 2 * n);
        for v in &self.basis {
            let mut row = v.clone();
            row.extend(v.iter().map(|(i, e)| (i + n, e.clone())));
            ech.insert(&row);
        }
        for v in &other.basis {
            ech.insert(v);
        }
        let (rows, pivots) = ech.into_rref();
        let meet: Vec<SparseVec<F::Elem>> = rows
            .iter()
            .zip(&pivots)
            .filter(|(_, &p)| p >= n)
            .map(|(r, _)| r.iter().map(|(i, e)| (i - n, e.clone())).collect())
            .collect();
        Ok(Self::from_sparse(self.field.clone(), n, &meet))
    }

    /// Complement of `self` inside `within`: the echelon basis vectors of
    /// `within` whose pivot columns are not pivots of `self`.
    pub fn complement_in(&self, within: &Self) -> Result<Self> {
        if !self.is_subspace_of(within)? {
            return Err(Error::NotContained);
        }
        let mut basis = Vec::new();
        let mut pivots = Vec::new();
        for (v, &p) in within.basis.iter().zip(&within.pivots) {
            if self.pivots.binary_search(&p).is_err() {
                basis.push(v.clone());
                pivots.push(p);
            }
        }
        Ok(Subspace {
            field: self.field.clone(),
            ambient_dim: self.ambient_dim,
            basis,
            pivots,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn e(i: usize) -> SparseVec<u64> {
        vec![(i, 1)]
    }

    #[test]
    fn intersection_examples() {
        let f = PrimeField::new(5).unwrap();
        let a = Subspace::from_sparse(f, 3, &[e(0), e(1)]);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let l1 = Subspace::from_sparse(f, 2, &[e(0)]);
        let l2 = Subspace::from_sparse(f, 2, &[e(1)]);
        assert!(l1.intersect(&l2).unwrap().is_zero());
        let b = Subspace::from_sparse(f, 3, &[e(1), e(2)]);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::from_sparse(f, 3, &[e(1)]));
    }

    #[test]
    fn intersection_rejects_mismatch() {
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        let a = Subspace::full(f2, 2);
        let b = Subspace::full(f3, 2);
        assert_eq!(a.intersect(&b), Err(Error::FieldMismatch));
        let c = Subspace::full(f2, 3);
        assert!(matches!(a.intersect(&c), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn complement_examples() {
        let f = Rationals;
        let within = Subspace::full(f, 2);
        assert!(within.complement_in(&within).unwrap().is_zero());
        assert_eq!(Subspace::zero(f, 2).complement_in(&within).unwrap(), within);
        // e1+e2 has pivot column 0, so the greedy rule keeps e2.
        let diag = Subspace::span(f, 2, &[vec![f.one(), f.one()]]).unwrap();
        let w = diag.complement_in(&within).unwrap();
        assert_eq!(w, Subspace::coordinate(f, 2, &[1]));
        let line = Subspace::coordinate(f, 2, &[0]);
        assert_eq!(within.complement_in(&line), Err(Error::NotContained));
    }

    fn arb_subspace(n: usize) -> impl Strategy<Value = Subspace<PrimeField>> {
        prop::collection::vec(prop::collection::vec(0u64..3, n), 0..=n).prop_map(move |vs| {
            let f = PrimeField::new(3).unwrap();
            Subspace::span(f, n, &vs).unwrap()
        })
    }

    proptest! {
        #[test]
        fn dimension_formula(a in arb_subspace(4), b in arb_subspace(4)) {
            let meet = a.intersect(&b).unwrap();
            let join = a.sum(&b).unwrap();
            prop_assert_eq!(a.dim() + b.dim(), meet.dim() + join.dim());
            prop_assert!(meet.is_subspace_of(&a).unwrap());
            prop_assert!(meet.is_subspace_of(&b).unwrap());
        }

        #[test]
        fn complement_is_direct(a in arb_subspace(5), b in arb_subspace(5)) {
            let within = a.sum(&b).unwrap();
            let w = a.complement_in(&within).unwrap();
            prop_assert!(w.intersect(&a).unwrap().is_zero());
            prop_assert_eq!(w.sum(&a).unwrap(), within);
        }

        #[test]
        fn intersection_matches_enumeration(a in arb_subspace(3), b in arb_subspace(3)) {
            let f = PrimeField::new(3).unwrap();
            let meet = a.intersect(&b).unwrap();
            let mut count = 0;
            for code in 0..27u64 {
                let v = vec![code % 3, (code / 3) % 3, code / 9];
                let sv = from_dense(&f, &v);
                if a.contains(&sv) && b.contains(&sv) {
                    count += 1;
                }
            }
            prop_assert_eq!(count, 3usize.pow(meet.dim() as u32));
        }
    }
}
