//! Randomized construction of a faithful representation of dimension
//! `d + 1` by extending along a central series with one-dimensional steps.
//!
//! With `a_1, ..., a_d` the refined central series basis and `ρ` a faithful
//! representation of `g/g_i` on `K^m`, a cocycle `δ ∈ Z^1(g/g_{i+1}, K^m)`
//! with `δ(a_{i+1}) ≠ 0` yields the faithful representation
//!
//! ```text
//! ψ(a_j) = [ 0        0      ]
//!          [ δ(a_j)   ρ(a_j) ]
//! ```
//!
//! on `K^{m+1}`, the new coordinate placed first. Every matrix is strictly
//! lower triangular with zero first row and zero last column.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::lie_algebra::LieAlgebra;
use crate::linalg::{kernel_basis, Accumulator, SparseMatrix, SparseVec};
use crate::representation::{Provenance, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineConfig {
    pub seed: u64,
    /// Number of runs from the start before giving up.
    pub retries: usize,
    /// Over `Q`, random coefficients are integers in `[-bound, bound]`.
    pub bound: i64,
}

impl Default for AffineConfig {
    fn default() -> Self {
        AffineConfig {
            seed: 0,
            retries: 10,
            bound: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AffineOutcome<F: Field> {
    Success(Representation<F>),
    /// `deepest_step` is the largest number of basis vectors adjoined by any
    /// attempt before no suitable cocycle existed.
    Fail { deepest_step: usize, attempts: usize },
}

impl<F: Field> AffineOutcome<F> {
    pub fn representation(&self) -> Option<&Representation<F>> {
        match self {
            AffineOutcome::Success(r) => Some(r),
            AffineOutcome::Fail { .. } => None,
        }
    }
}

/// Basis of `Z^1(q, K^m)`; vector index `l * m + r` is coordinate `r` of
/// `δ(a_l)`. `rho` must be a representation of `q` on `K^m`.
pub fn one_cocycles<F: Field>(q: &LieAlgebra<F>, rho: &[SparseMatrix<F>], m: usize) -> Result<Vec<SparseVec<F::Elem>>> {
    let rep = Representation::new(q.clone(), m, rho.to_vec(), Provenance::External)?;
    if let Err((i, j)) = rep.is_homomorphism() {
        return Err(Error::NotAHomomorphism(i, j));
    }
    Ok(cocycles_unchecked(q, rho, m))
}

fn cocycles_unchecked<F: Field>(q: &LieAlgebra<F>, rho: &[SparseMatrix<F>], m: usize) -> Vec<SparseVec<F::Elem>> {
    let f = q.field();
    let k = q.dim();
    let minus_one = f.neg(&f.one());
    let mut rows = Vec::new();
    // δ([a_j, a_k]) - ρ(a_j) δ(a_k) + ρ(a_k) δ(a_j) = 0, row by row.
    for j in 0..k {
        for l in (j + 1)..k {
            let bracket = q.bracket_basis(j, l);
            for r in 0..m {
                let mut acc = Accumulator::new();
                for (t, c) in bracket {
                    acc.add(f, t * m + r, c);
                }
                for (s, v) in rho[j].row(r) {
                    acc.add_mul(f, l * m + s, &minus_one, v);
                }
                for (s, v) in rho[l].row(r) {
                    acc.add(f, j * m + s, v);
                }
                let eq = acc.finish(f);
                if !eq.is_empty() {
                    rows.push(eq);
                }
            }
        }
    }
    kernel_basis(f, k * m, &rows)
}

fn random_scalar<F: Field>(field: &F, rng: &mut ChaCha8Rng, bound: i64) -> F::Elem {
    let p = field.spec().characteristic;
    if p == 0 {
        field.from_i64(rng.random_range(-bound..=bound))
    } else {
        field.from_i64(rng.random_range(0..p) as i64)
    }
}

/// `g/g_k` in the basis `a_1, ..., a_k` of an algebra already written in
/// the refined central series basis.
fn truncate<F: Field>(g: &LieAlgebra<F>, k: usize) -> Result<LieAlgebra<F>> {
    let brackets = g
        .nonzero_brackets()
        .filter(|(i, j, _)| *i < k && *j < k)
        .map(|(i, j, v)| (i, j, v.iter().filter(|(t, _)| *t < k).cloned().collect::<SparseVec<_>>()))
        .filter(|(_, _, v)| !v.is_empty())
        .collect::<Vec<_>>();
    LieAlgebra::from_brackets(g.field().clone(), k, brackets)
}

/// How [`extend_step`] picks a cocycle among those with `δ(a_new) ≠ 0`.
pub enum Choice<'a> {
    /// The first kernel basis vector with a nonzero `a_new` block, as is.
    Basis,
    /// That vector plus a random combination of the other basis vectors.
    Random { rng: &'a mut ChaCha8Rng, bound: i64 },
}

/// One extension step from a faithful `rho` of `q/span(a_new)` on `K^m`
/// (given for the first `q.dim() - 1` basis vectors) to `q` on `K^{m+1}`.
/// Returns `None` if every cocycle vanishes on the new basis vector.
pub fn extend_step<F: Field>(q: &LieAlgebra<F>, rho: &[SparseMatrix<F>], choice: Choice<'_>) -> Result<Option<Vec<SparseMatrix<F>>>> {
    let f = q.field().clone();
    let k = q.dim();
    if rho.len() + 1 != k {
        return Err(Error::DimensionMismatch {
            expected: k - 1,
            found: rho.len(),
        });
    }
    let m = rho.first().map_or(1, |r| r.nrows());
    let mut extended = rho.to_vec();
    extended.push(SparseMatrix::zeros(f.clone(), m, m));
    let basis = cocycles_unchecked(q, &extended, m);
    let new_block = (k - 1) * m..k * m;
    let hits_new = |v: &SparseVec<F::Elem>| v.iter().any(|(t, _)| new_block.contains(t));
    let Some(lead) = basis.iter().position(hits_new) else {
        return Ok(None);
    };
    let mut delta = basis[lead].clone();
    if let Choice::Random { rng, bound } = choice {
        // Only the lead vector touches the new block, so every combination
        // keeps δ(a_new) ≠ 0.
        let mut acc = Accumulator::new();
        acc.add_scaled(&f, &f.one(), &basis[lead]);
        for (t, v) in basis.iter().enumerate() {
            if t != lead {
                let r = random_scalar(&f, rng, bound);
                acc.add_scaled(&f, &r, v);
            }
        }
        delta = acc.finish(&f);
    }
    let mut images: Vec<SparseVec<F::Elem>> = vec![Vec::new(); k];
    for (t, c) in delta {
        images[t / m].push((t % m, c));
    }
    let out = extended
        .iter()
        .zip(&images)
        .map(|(r, img)| {
            let mut rows = vec![Vec::new(); m + 1];
            for (row, dst) in rows.iter_mut().skip(1).enumerate() {
                if let Some(c) = crate::linalg::sparse::get(img, row) {
                    dst.push((0, c.clone()));
                }
                dst.extend(r.row(row).iter().map(|(s, v)| (s + 1, v.clone())));
            }
            SparseMatrix::from_rows(f.clone(), m + 1, rows)
        })
        .collect();
    Ok(Some(out))
}

/// Runs until success or until `config.retries` attempts have failed.
/// The first attempt uses [`Choice::Basis`] at every step, later ones
/// [`Choice::Random`]; the random stream continues across attempts.
pub fn algorithm_affine<F: Field>(g: &LieAlgebra<F>, config: &AffineConfig) -> Result<AffineOutcome<F>> {
    let (adapted, rewritten) = g.adapted_basis()?;
    let d = g.dim();
    let quotients = (1..=d).map(|k| truncate(&rewritten, k)).collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut deepest = 0;
    let attempts = config.retries.max(1);
    for attempt in 0..attempts {
        let mut rho: Vec<SparseMatrix<F>> = Vec::new();
        let mut failed = false;
        for q in &quotients {
            let choice = if attempt == 0 {
                Choice::Basis
            } else {
                Choice::Random {
                    rng: &mut rng,
                    bound: config.bound,
                }
            };
            match extend_step(q, &rho, choice)? {
                Some(next) => rho = next,
                None => {
                    failed = true;
                    break;
                }
            }
        }
        if !failed {
            let rep = Representation::from_adapted(
                g.clone(),
                d + 1,
                &rho,
                &adapted.inverse,
                Provenance::Affine {
                    seed: config.seed,
                    attempt,
                },
            )?;
            return Ok(AffineOutcome::Success(rep));
        }
        deepest = deepest.max(rho.len());
    }
    Ok(AffineOutcome::Fail {
        deepest_step: deepest,
        attempts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::{PrimeField, Rationals};

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(7)
    }

    #[test]
    fn cocycle_dimensions() {
        let f = Rationals;
        let one = LieAlgebra::abelian(f, 1);
        assert_eq!(one_cocycles(&one, &[SparseMatrix::zeros(f, 1, 1)], 1).unwrap().len(), 1);
        let two = LieAlgebra::abelian(f, 2);
        let zero = SparseMatrix::zeros(f, 2, 2);
        assert_eq!(one_cocycles(&two, &[zero.clone(), zero], 2).unwrap().len(), 4);
    }

    #[test]
    fn cocycles_reject_non_homomorphism() {
        let f = Rationals;
        let h = catalog::heisenberg(f);
        let mut x = SparseMatrix::zeros(f, 2, 2);
        x.set(1, 0, f.one());
        let zero = SparseMatrix::zeros(f, 2, 2);
        let mut y = SparseMatrix::zeros(f, 2, 2);
        y.set(0, 1, f.one());
        assert_eq!(one_cocycles(&h, &[x, y, zero], 2), Err(Error::NotAHomomorphism(0, 1)));
    }

    #[test]
    fn base_case() {
        let f = Rationals;
        let g = LieAlgebra::abelian(f, 1);
        let rho = extend_step(&g, &[], Choice::Basis).unwrap().unwrap();
        let mut expect = SparseMatrix::zeros(f, 2, 2);
        expect.set(1, 0, f.one());
        assert_eq!(rho, vec![expect]);
    }

    #[test]
    fn heisenberg_last_step() {
        let f = Rationals;
        let h = catalog::heisenberg(f);
        let mut r = rng();
        let mut rho = Vec::new();
        for k in 1..=2 {
            rho = extend_step(&truncate(&h, k).unwrap(), &rho, Choice::Random { rng: &mut r, bound: 5 }).unwrap().unwrap();
        }
        let mut extended = rho.clone();
        extended.push(SparseMatrix::zeros(f, 3, 3));
        let z1 = one_cocycles(&h, &extended, 3).unwrap();
        assert!(z1.iter().any(|v| v.iter().any(|(t, _)| (6..9).contains(t))));
        let full = extend_step(&h, &rho, Choice::Random { rng: &mut r, bound: 5 }).unwrap().unwrap();
        let rep = Representation::new(h, 4, full, Provenance::External).unwrap();
        assert_eq!(rep.is_homomorphism(), Ok(()));
        assert!(rep.is_faithful());
    }

    fn check_shape<F: Field>(rep: &Representation<F>, adapted_identity: bool) {
        assert_eq!(rep.is_homomorphism(), Ok(()));
        assert!(rep.is_faithful());
        let n = rep.dim();
        let last = crate::linalg::Subspace::coordinate(rep.field().clone(), n, &[n - 1]);
        assert!(last.is_subspace_of(&rep.annihilated_subspace()).unwrap());
        if adapted_identity {
            for m in rep.matrices() {
                assert!(m.is_strictly_lower_triangular());
                assert!(m.row(0).is_empty());
            }
        }
    }

    #[test]
    fn small_runs_succeed() {
        let f = Rationals;
        let cfg = AffineConfig::default();
        let AffineOutcome::Success(rep) = algorithm_affine(&catalog::heisenberg(f), &cfg).unwrap() else {
            panic!("heisenberg failed");
        };
        assert_eq!(rep.dim(), 4);
        check_shape(&rep, true);

        let AffineOutcome::Success(rep) = algorithm_affine(&LieAlgebra::abelian(f, 2), &cfg).unwrap() else {
            panic!("abelian failed");
        };
        assert_eq!(rep.dim(), 3);
        check_shape(&rep, true);

        let f2 = PrimeField::new(2).unwrap();
        let AffineOutcome::Success(rep) = algorithm_affine(&catalog::upper_triangular(5, f2).unwrap(), &cfg).unwrap() else {
            panic!("U_5 failed");
        };
        assert_eq!(rep.dim(), 11);
        check_shape(&rep, false);
    }

    #[test]
    fn seed_reproducible() {
        let g = catalog::free_nilpotent(2, 4, Rationals).unwrap();
        let cfg = AffineConfig {
            seed: 42,
            ..AffineConfig::default()
        };
        let a = algorithm_affine(&g, &cfg).unwrap();
        let b = algorithm_affine(&g, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.representation().is_some());
    }

    #[test]
    fn filiform_13_fails() {
        let g = catalog::filiform_f(13).unwrap();
        let cfg = AffineConfig {
            retries: 3,
            ..AffineConfig::default()
        };
        match algorithm_affine(&g, &cfg).unwrap() {
            AffineOutcome::Fail { deepest_step, attempts } => {
                assert_eq!(attempts, 3);
                assert!(deepest_step < 13);
            }
            AffineOutcome::Success(_) => panic!("f_13 admitted a 14-dimensional affine representation"),
        }
    }
}
