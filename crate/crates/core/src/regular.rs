//! The regular construction: `U(g)/U^{c+1}(g)` followed by greedy pruning
//! of monomials.

use crate::error::Result;
use crate::field::Field;
use crate::lie_algebra::{AdaptedBasis, LieAlgebra};
use crate::linalg::SparseMatrix;
use crate::representation::{Provenance, Representation};
use crate::uea::TruncatedUea;

/// Number of partitions of `j`.
pub fn partitions(j: usize) -> u128 {
    let mut p = vec![0u128; j + 1];
    p[0] = 1;
    for part in 1..=j {
        for k in part..=j {
            p[k] += p[k - part];
        }
    }
    p[j]
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `ν(d, c) = Σ_{j=0}^{c} C(d-j, c-j) p(j)`.
pub fn nu(d: usize, c: usize) -> u128 {
    (0..=c)
        .filter(|&j| j <= d)
        .map(|j| binomial(d - j, c - j) * partitions(j))
        .sum()
}

fn emit<F: Field>(g: &LieAlgebra<F>, uea: &TruncatedUea<F>, adapted: &AdaptedBasis<F>, pruned: bool) -> Result<Representation<F>> {
    let mats: Vec<SparseMatrix<F>> = (0..g.dim()).map(|i| uea.action_matrix(i)).collect();
    Representation::from_adapted(
        g.clone(),
        uea.active_count(),
        &mats,
        &adapted.inverse,
        Provenance::Regular { pruned },
    )
}

/// The module `U(g)/U^{c+1}(g)` on all monomials of weight at most `c`.
pub fn regular_unpruned<F: Field>(g: &LieAlgebra<F>) -> Result<Representation<F>> {
    let (uea, adapted) = TruncatedUea::for_algebra(g)?;
    emit(g, &uea, &adapted, false)
}

/// Positions of the monomials that pruning must keep: `1` and `z` for each
/// central adapted basis vector `z`.
pub fn protected_monomials<F: Field>(uea: &TruncatedUea<F>, adapted: &AdaptedBasis<F>) -> Vec<usize> {
    let mut out = vec![0];
    out.extend((0..adapted.central.len()).filter(|&k| adapted.central[k]).map(|k| uea.generator_monomial(k)));
    out
}

/// Moves monomials `a` with `x_i · a ≡ 0` for every `i` into the discarded
/// set until nothing changes. Sweeps run from the heaviest monomial down.
/// Returns the removed monomials in removal order.
pub fn prune<F: Field>(uea: &mut TruncatedUea<F>, protected: &[usize]) -> Vec<usize> {
    let d = uea.algebra().dim();
    let mut removed = Vec::new();
    loop {
        let before = removed.len();
        for a in uea.active_indices().into_iter().rev() {
            if protected.contains(&a) {
                continue;
            }
            let dead = (0..d).all(|i| uea.product(i, a).iter().all(|(t, _)| !uea.is_active(*t)));
            if dead {
                uea.deactivate(a);
                removed.push(a);
            }
        }
        if removed.len() == before {
            return removed;
        }
    }
}

/// Truncated enveloping algebra with the pruned active set, as used by the
/// regular and dual constructions.
pub fn pruned_uea<F: Field>(g: &LieAlgebra<F>) -> Result<(TruncatedUea<F>, AdaptedBasis<F>)> {
    let (mut uea, adapted) = TruncatedUea::for_algebra(g)?;
    let protected = protected_monomials(&uea, &adapted);
    prune(&mut uea, &protected);
    Ok((uea, adapted))
}

pub fn algorithm_regular<F: Field>(g: &LieAlgebra<F>) -> Result<Representation<F>> {
    let (uea, adapted) = pruned_uea(g)?;
    emit(g, &uea, &adapted, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::{PrimeField, Rationals};
    use crate::uea::enumerate_monomials;

    #[test]
    fn partition_counts() {
        let p: Vec<_> = (0..=10).map(partitions).collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    /// Partitions of `n` with parts at most `max`, by explicit enumeration.
    fn brute_partitions(n: usize, max: usize) -> u128 {
        if n == 0 {
            return 1;
        }
        (1..=max.min(n)).map(|part| brute_partitions(n - part, part)).sum()
    }

    #[test]
    fn partitions_match_enumeration() {
        for j in 0..15 {
            assert_eq!(partitions(j), brute_partitions(j, j));
        }
    }

    #[test]
    fn nu_values() {
        assert_eq!(nu(3, 2), 7);
        assert_eq!(nu(5, 0), 1);
        assert_eq!(nu(6, 3), 41);
        // Direct evaluation with p = (1, 1, 2, 3): 20 + 10 + 8 + 3.
        assert_eq!(nu(6, 3), 20 + 10 + 4 * 2 + 3);
    }

    #[test]
    fn nu_counts_monomials_for_maximal_class() {
        // Heisenberg and filiform weight profiles (1, 1, 2, ..., c).
        for c in 2..12 {
            let mut weights = vec![1, 1];
            weights.extend(2..=c);
            let count = enumerate_monomials(&weights, c).unwrap().len() as u128;
            assert_eq!(count, nu(weights.len(), c), "c = {c}");
        }
    }

    #[test]
    fn unpruned_dimensions() {
        let h = regular_unpruned(&catalog::heisenberg(Rationals)).unwrap();
        assert_eq!(h.dim(), 7);
        assert!(h.is_faithful());
        let one = regular_unpruned(&LieAlgebra::abelian(Rationals, 1)).unwrap();
        assert_eq!(one.dim(), 2);
        // U_4 has weights (1,1,1,2,2,3); its monomial count is 29.
        let u4 = regular_unpruned(&catalog::upper_triangular(4, Rationals).unwrap()).unwrap();
        assert_eq!(u4.dim(), 29);
        assert_eq!(u4.is_homomorphism(), Ok(()));
        assert!(u4.is_faithful());
    }

    #[test]
    fn heisenberg_pruning_sequence() {
        let g = catalog::heisenberg(Rationals);
        let (mut uea, adapted) = TruncatedUea::for_algebra(&g).unwrap();
        let protected = protected_monomials(&uea, &adapted);
        let removed: Vec<_> = prune(&mut uea, &protected)
            .into_iter()
            .map(|m| uea.monomials()[m].to_string())
            .collect();
        // PBW variables (z, x, y): x², xy, y², then y.
        assert_eq!(removed, vec!["x2^2", "x2*x3", "x3^2", "x3"]);
        let kept: Vec<_> = uea.active_indices().into_iter().map(|m| uea.monomials()[m].to_string()).collect();
        assert_eq!(kept, vec!["1", "x2", "x1"]);
        // A second run is a fixpoint.
        assert!(prune(&mut uea, &protected).is_empty());
    }

    #[test]
    fn abelian_keeps_everything() {
        let rep = algorithm_regular(&LieAlgebra::abelian(Rationals, 1)).unwrap();
        assert_eq!(rep.dim(), 2);
    }

    #[test]
    fn regular_examples() {
        let h = algorithm_regular(&catalog::heisenberg(Rationals)).unwrap();
        assert_eq!(h.dim(), 3);
        assert_eq!(h.is_homomorphism(), Ok(()));
        assert!(h.is_faithful());

        let f2 = PrimeField::new(2).unwrap();
        let u4 = algorithm_regular(&catalog::upper_triangular(4, f2).unwrap()).unwrap();
        assert_eq!(u4.dim(), 7);
        assert_eq!(u4.is_homomorphism(), Ok(()));
        assert!(u4.is_faithful());
    }

    #[test]
    fn pruning_keeps_protected_and_is_faithful() {
        let f = PrimeField::new(3).unwrap();
        for g in [
            catalog::upper_triangular(5, f).unwrap(),
            catalog::free_nilpotent(2, 4, f).unwrap(),
            catalog::free_nilpotent(3, 3, f).unwrap(),
        ] {
            let (mut uea, adapted) = TruncatedUea::for_algebra(&g).unwrap();
            let full = uea.active_count();
            let protected = protected_monomials(&uea, &adapted);
            prune(&mut uea, &protected);
            assert!(protected.iter().all(|&m| uea.is_active(m)));
            assert!(uea.active_count() <= full);
            assert!(prune(&mut uea, &protected).is_empty());
            let rep = algorithm_regular(&g).unwrap();
            assert_eq!(rep.dim(), uea.active_count());
            assert_eq!(rep.is_homomorphism(), Ok(()));
            assert!(rep.is_faithful());
        }
    }
}
