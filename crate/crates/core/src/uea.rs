//! Truncated universal enveloping algebra on a weight-graded PBW basis.
//!
//! The algebra is given in a basis `x_1, ..., x_d` of weight-homogeneous
//! vectors for which `[x_i, x_j]` only involves basis vectors of weight at
//! least `wgt(x_i) + wgt(x_j)`. Monomials of weight above the class and
//! monomials marked inactive act as zero.
//!
//! [`TruncatedUea::for_algebra`] lists the PBW variables from the top of the
//! lower central series down, so heavier variables stand further left in a
//! monomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lie_algebra::{AdaptedBasis, LayerOrder, LieAlgebra};
use crate::linalg::{Accumulator, SparseMatrix, SparseVec};

/// PBW monomial `x_1^{α_1} ⋯ x_d^{α_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub weight: usize,
    pub exponents: Vec<u32>,
}

impl Monomial {
    pub fn one(d: usize) -> Self {
        Monomial {
            weight: 0,
            exponents: vec![0; d],
        }
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    fn first_variable(&self) -> Option<usize> {
        self.exponents.iter().position(|&a| a > 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &a) in self.exponents.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if a > 1 {
                write!(f, "^{a}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of weight at most `c`, ordered by weight and then by
/// exponent vector (lexicographically ascending).
pub fn enumerate_monomials(weights: &[usize], c: usize) -> Result<Vec<Monomial>> {
    if weights.contains(&0) {
        return Err(Error::InvalidParameter("weights must be positive".into()));
    }
    let d = weights.len();
    let mut out = Vec::new();
    let mut exps = vec![0u32; d];
    fn rec(weights: &[usize], c: usize, pos: usize, used: usize, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos == weights.len() {
            out.push(Monomial {
                weight: used,
                exponents: exps.clone(),
            });
            return;
        }
        let mut a = 0;
        while used + a * weights[pos] <= c {
            exps[pos] = a as u32;
            rec(weights, c, pos + 1, used + a * weights[pos], exps, out);
            a += 1;
        }
        exps[pos] = 0;
    }
    rec(weights, c, 0, 0, &mut exps, &mut out);
    out.sort();
    Ok(out)
}

#[derive(Debug)]
struct ProductTable<E> {
    /// `products[i * n + m]` is `x_i · m` over all monomials of weight ≤ c.
    products: Vec<SparseVec<E>>,
}

/// `U(g) / U^{c+1}(g)` further divided by the span of the inactive monomials.
#[derive(Debug, Clone)]
pub struct TruncatedUea<F: Field> {
    algebra: LieAlgebra<F>,
    weights: Vec<usize>,
    class: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Vec<u32>, usize>,
    table: Arc<ProductTable<F::Elem>>,
    active: Vec<bool>,
}

impl<F: Field> TruncatedUea<F> {
    /// `algebra` must already be written in a weight-adapted basis, in any order.
    pub fn new(algebra: LieAlgebra<F>, weights: Vec<usize>, class: usize) -> Result<Self> {
        let d = algebra.dim();
        if weights.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: weights.len(),
            });
        }
        for (i, j, v) in algebra.nonzero_brackets() {
            if v.iter().any(|(k, _)| weights[*k] < weights[i] + weights[j]) {
                return Err(Error::InvalidParameter(format!(
                    "bracket [x{}, x{}] lowers the weight filtration",
                    i + 1,
                    j + 1
                )));
            }
        }
        let monomials = enumerate_monomials(&weights, class)?;
        let index = monomials
            .iter()
            .enumerate()
            .map(|(k, m)| (m.exponents.clone(), k))
            .collect();
        let mut uea = TruncatedUea {
            active: vec![true; monomials.len()],
            algebra,
            weights,
            class,
            monomials,
            index,
            table: Arc::new(ProductTable { products: Vec::new() }),
        };
        uea.table = Arc::new(uea.build_table());
        Ok(uea)
    }

    /// Truncation of `U(g)` at the nilpotency class, in the adapted basis
    /// with descending layers.
    pub fn for_algebra(g: &LieAlgebra<F>) -> Result<(Self, AdaptedBasis<F>)> {
        let (adapted, rewritten) = g.adapted_basis_ordered(LayerOrder::Descending)?;
        let class = adapted.weights.iter().copied().max().unwrap_or(0);
        let uea = Self::new(rewritten, adapted.weights.clone(), class)?;
        Ok((uea, adapted))
    }

    fn build_table(&self) -> ProductTable<F::Elem> {
        let d = self.algebra.dim();
        let n = self.monomials.len();
        let mut memo: Vec<Option<SparseVec<F::Elem>>> = vec![None; d * n];
        for m in 0..n {
            for i in 0..d {
                self.straighten(i, m, &mut memo);
            }
        }
        ProductTable {
            products: memo.into_iter().map(|v| v.expect("filled")).collect(),
        }
    }

    fn lookup(&self, exponents: &[u32]) -> Option<usize> {
        self.index.get(exponents).copied()
    }

    /// `x_i · m` on the full truncation, straightened into PBW form.
    fn straighten(&self, i: usize, m: usize, memo: &mut Vec<Option<SparseVec<F::Elem>>>) -> SparseVec<F::Elem> {
        let n = self.monomials.len();
        if let Some(v) = &memo[i * n + m] {
            return v.clone();
        }
        let f = self.algebra.field();
        let mono = &self.monomials[m];
        let result = if mono.weight + self.weights[i] > self.class {
            Vec::new()
        } else {
            match mono.first_variable() {
                Some(j) if j < i => {
                    // x_i x_j m' = x_j (x_i m') + [x_i, x_j] m'
                    let mut rest = mono.exponents.clone();
                    rest[j] -= 1;
                    let rest = self.lookup(&rest).expect("lower weight monomial is enumerated");
                    let mut acc = Accumulator::new();
                    for (t, c) in self.straighten(i, rest, memo) {
                        acc.add_scaled(f, &c, &self.straighten(j, t, memo));
                    }
                    for (k, c) in self.algebra.bracket_basis(i, j).clone() {
                        acc.add_scaled(f, &c, &self.straighten(k, rest, memo));
                    }
                    acc.finish(f)
                }
                _ => {
                    let mut e = mono.exponents.clone();
                    e[i] += 1;
                    vec![(self.lookup(&e).expect("weight within class"), f.one())]
                }
            }
        };
        memo[i * n + m] = Some(result.clone());
        result
    }

    pub fn algebra(&self) -> &LieAlgebra<F> {
        &self.algebra
    }
    pub fn field(&self) -> &F {
        self.algebra.field()
    }
    pub fn weights(&self) -> &[usize] {
        &self.weights
    }
    pub fn class(&self) -> usize {
        self.class
    }

    /// Every monomial of weight at most the class, active or not.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial_index(&self, m: &Monomial) -> Option<usize> {
        self.lookup(&m.exponents)
    }

    /// Index of the degree-one monomial `x_k`.
    pub fn generator_monomial(&self, k: usize) -> usize {
        let mut e = vec![0; self.algebra.dim()];
        e[k] = 1;
        self.lookup(&e).expect("generators have weight within class")
    }

    pub fn is_active(&self, m: usize) -> bool {
        self.active[m]
    }

    pub fn deactivate(&mut self, m: usize) {
        self.active[m] = false;
    }

    /// Positions (in [`monomials`](Self::monomials)) of the active monomials, in order.
    pub fn active_indices(&self) -> Vec<usize> {
        (0..self.monomials.len()).filter(|&m| self.active[m]).collect()
    }

    pub fn active_count(&self) -> usize {
        self.active.iter().filter(|&&a| a).count()
    }

    /// `x_i · m` on the full truncation, ignoring the active set.
    pub fn product(&self, i: usize, m: usize) -> &SparseVec<F::Elem> {
        &self.table.products[i * self.monomials.len() + m]
    }

    /// `x_i · m` with inactive monomials dropped; indices refer to [`monomials`](Self::monomials).
    pub fn left_multiply(&self, i: usize, m: usize) -> Result<SparseVec<F::Elem>> {
        let d = self.algebra.dim();
        if i >= d {
            return Err(Error::IndexOutOfRange { index: i, dim: d });
        }
        if m >= self.monomials.len() {
            return Err(Error::IndexOutOfRange {
                index: m,
                dim: self.monomials.len(),
            });
        }
        Ok(self
            .product(i, m)
            .iter()
            .filter(|(t, _)| self.active[*t])
            .cloned()
            .collect())
    }

    /// Matrix of `x_i` on the active monomials (in active order).
    pub fn action_matrix(&self, i: usize) -> SparseMatrix<F> {
        let active = self.active_indices();
        let mut position = vec![usize::MAX; self.monomials.len()];
        for (p, &m) in active.iter().enumerate() {
            position[m] = p;
        }
        let columns: Vec<SparseVec<F::Elem>> = active
            .iter()
            .map(|&m| {
                let mut col: SparseVec<F::Elem> = self
                    .product(i, m)
                    .iter()
                    .filter(|(t, _)| self.active[*t])
                    .map(|(t, c)| (position[*t], c.clone()))
                    .collect();
                col.sort_by_key(|(r, _)| *r);
                col
            })
            .collect();
        SparseMatrix::from_columns(self.field().clone(), active.len(), &columns)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn heisenberg_uea() -> TruncatedUea<Rationals> {
        TruncatedUea::for_algebra(&catalog::heisenberg(Rationals)).unwrap().0
    }

    fn mono(u: &TruncatedUea<Rationals>, e: &[u32]) -> usize {
        u.lookup(e).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        let ms = enumerate_monomials(&[1, 1, 2], 2).unwrap();
        let shown: Vec<_> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, vec!["1", "x2", "x1", "x3", "x2^2", "x1*x2", "x1^2"]);
        assert_eq!(enumerate_monomials(&[1, 3, 5], 0).unwrap(), vec![Monomial::one(3)]);
        assert_eq!(enumerate_monomials(&[1, 1], 3).unwrap().len(), 10);
        assert!(enumerate_monomials(&[1, 0], 3).is_err());
    }

    #[test]
    fn enumeration_matches_lattice_count() {
        // Number of solutions of sum a_i w_i <= c, by brute force over a box.
        let weights = [1, 1, 2, 3];
        let c = 5;
        let mut count = 0;
        for a in 0..=5 {
            for b in 0..=5 {
                for e in 0..=2 {
                    for g in 0..=1 {
                        if a + b + 2 * e + 3 * g <= c {
                            count += 1;
                        }
                    }
                }
            }
        }
        assert_eq!(enumerate_monomials(&weights, c).unwrap().len(), count);
    }

    #[test]
    fn heisenberg_pbw_order() {
        let u = heisenberg_uea();
        assert_eq!(u.weights(), &[2, 1, 1]);
        let shown: Vec<_> = u.monomials().iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, vec!["1", "x3", "x2", "x3^2", "x2*x3", "x2^2", "x1"]);
    }

    // PBW variables of the Heisenberg algebra are (z, x, y).
    #[test]
    fn heisenberg_products() {
        let u = heisenberg_uea();
        let f = Rationals;
        let (z, x, y) = (mono(&u, &[1, 0, 0]), mono(&u, &[0, 1, 0]), mono(&u, &[0, 0, 1]));
        let xy = mono(&u, &[0, 1, 1]);
        // y · x = xy - z
        let mut expect = vec![(xy, f.one()), (z, f.from_i64(-1))];
        expect.sort_by_key(|(k, _)| *k);
        assert_eq!(u.left_multiply(2, x).unwrap(), expect);
        // x · xy has weight 3
        assert!(u.left_multiply(1, xy).unwrap().is_empty());
        let one = mono(&u, &[0, 0, 0]);
        assert_eq!(u.left_multiply(0, one).unwrap(), vec![(z, f.one())]);
        assert_eq!(u.left_multiply(1, y).unwrap(), vec![(xy, f.one())]);
        assert!(u.left_multiply(3, one).is_err());
    }

    #[test]
    fn heisenberg_action_matrices() {
        let u = heisenberg_uea();
        let f = Rationals;
        let mz = u.action_matrix(0);
        assert_eq!(mz.nnz(), 1);
        let one = mono(&u, &[0, 0, 0]);
        let z = mono(&u, &[1, 0, 0]);
        assert_eq!(mz.get(z, one), f.one());

        let my = u.action_matrix(2);
        let (x, y) = (mono(&u, &[0, 1, 0]), mono(&u, &[0, 0, 1]));
        let (xy, y2) = (mono(&u, &[0, 1, 1]), mono(&u, &[0, 0, 2]));
        assert_eq!(my.nnz(), 4);
        assert_eq!(my.get(y, one), f.one());
        assert_eq!(my.get(xy, x), f.one());
        assert_eq!(my.get(z, x), f.from_i64(-1));
        assert_eq!(my.get(y2, y), f.one());
    }

    #[test]
    fn abelian_class_one() {
        let g = LieAlgebra::abelian(Rationals, 2);
        let (u, _) = TruncatedUea::for_algebra(&g).unwrap();
        assert_eq!(u.monomials().len(), 3);
        let m = u.action_matrix(0);
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(u.generator_monomial(0), 0), Rationals.one());
    }

    #[test]
    fn rejects_unadapted_basis() {
        let f = Rationals;
        // [x1, x2] = x1 is not weight-raising.
        let g = LieAlgebra::from_brackets(f, 2, vec![(0, 1, vec![(0, f.one())])]).unwrap();
        assert!(TruncatedUea::new(g, vec![1, 1], 2).is_err());
    }

    fn check_homomorphism<F: Field>(u: &TruncatedUea<F>) {
        let g = u.algebra();
        let f = g.field();
        let d = g.dim();
        let n = u.active_count();
        let mats: Vec<_> = (0..d).map(|i| u.action_matrix(i)).collect();
        for i in 0..d {
            assert!(mats[i].is_nilpotent_within(u.class() + 1));
            for j in (i + 1)..d {
                let lhs = mats[i].commutator(&mats[j]).unwrap();
                let terms: Vec<_> = g.bracket_basis(i, j).iter().map(|(k, c)| (c.clone(), &mats[*k])).collect();
                let rhs = SparseMatrix::linear_combination(f, n, n, &terms).unwrap();
                assert_eq!(lhs, rhs, "pair ({i}, {j})");
            }
        }
    }

    #[test]
    fn action_is_lie_homomorphism() {
        check_homomorphism(&heisenberg_uea());
        let f3 = PrimeField::new(3).unwrap();
        for g in [
            catalog::upper_triangular(4, f3).unwrap(),
            catalog::upper_triangular(5, f3).unwrap(),
            catalog::free_nilpotent(2, 4, f3).unwrap(),
            catalog::free_nilpotent(3, 3, f3).unwrap(),
        ] {
            check_homomorphism(&TruncatedUea::for_algebra(&g).unwrap().0);
        }
        check_homomorphism(&TruncatedUea::for_algebra(&catalog::filiform_f(13).unwrap()).unwrap().0);
    }

    #[test]
    fn products_raise_weight() {
        let g = catalog::free_nilpotent(2, 5, Rationals).unwrap();
        let (u, _) = TruncatedUea::for_algebra(&g).unwrap();
        for i in 0..g.dim() {
            for m in 0..u.monomials().len() {
                let w = u.weights()[i] + u.monomials()[m].weight;
                for (t, _) in u.product(i, m) {
                    assert!(u.monomials()[*t].weight >= w);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn enumeration_is_sorted_and_bounded(weights in prop::collection::vec(1usize..4, 1..5), c in 0usize..6) {
            let ms = enumerate_monomials(&weights, c).unwrap();
            prop_assert!(ms.windows(2).all(|w| w[0] < w[1]));
            for m in &ms {
                let w: usize = m.exponents.iter().zip(&weights).map(|(a, w)| *a as usize * w).sum();
                prop_assert_eq!(w, m.weight);
                prop_assert!(w <= c);
            }
        }
    }
}
