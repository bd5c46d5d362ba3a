//! Iterated reduction `V → V/W`, where `W` complements `S ∩ C` in `S`,
//! `S` is the subspace annihilated by `g` and `C` the image of the center.

use crate::error::Result;
use crate::field::Field;
use crate::lie_algebra::LieAlgebra;
use crate::linalg::{SparseMatrix, SparseVec, Subspace};
use crate::regular::algorithm_regular;
use crate::representation::{Provenance, Representation};

/// Subspaces computed by one reduction step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction<F: Field> {
    pub annihilated: Subspace<F>,
    pub center_image: Subspace<F>,
    pub meet: Subspace<F>,
    pub removed: Subspace<F>,
}

/// One step: returns the representation on `V/W` and the step's subspaces.
/// When `W = 0` the input is returned unchanged.
pub fn reduce_once<F: Field>(rep: &Representation<F>) -> Result<(Representation<F>, Reduction<F>)> {
    let s = rep.annihilated_subspace();
    let c = rep.center_image();
    let m = s.intersect(&c)?;
    let w = m.complement_in(&s)?;
    let step = Reduction {
        annihilated: s,
        center_image: c,
        meet: m,
        removed: w,
    };
    if step.removed.is_zero() {
        return Ok((rep.clone(), step));
    }
    let projected = project(rep, &step.removed)?;
    Ok((projected, step))
}

/// Induced action on `V/W`, in the basis of the non-pivot coordinates of `W`.
fn project<F: Field>(rep: &Representation<F>, w: &Subspace<F>) -> Result<Representation<F>> {
    let n = rep.dim();
    let kept: Vec<usize> = (0..n).filter(|c| w.pivots().binary_search(c).is_err()).collect();
    let mut new_index = vec![usize::MAX; n];
    for (k, &c) in kept.iter().enumerate() {
        new_index[c] = k;
    }
    let f = rep.field().clone();
    let matrices = rep
        .matrices()
        .iter()
        .map(|m| {
            let columns = m.columns();
            let reduced: Vec<SparseVec<F::Elem>> = kept
                .iter()
                .map(|&c| w.reduce(&columns[c]).into_iter().map(|(r, e)| (new_index[r], e)).collect())
                .collect();
            SparseMatrix::from_columns(f.clone(), kept.len(), &reduced)
        })
        .collect();
    Representation::new(rep.algebra().clone(), kept.len(), matrices, rep.provenance().clone())
}

/// Applies [`reduce_once`] until nothing is removed; returns the final
/// representation and the number of effective reductions.
pub fn reduce_to_fixpoint<F: Field>(rep: &Representation<F>) -> Result<(Representation<F>, usize)> {
    let mut current = rep.clone();
    let mut steps = 0;
    loop {
        let (next, step) = reduce_once(&current)?;
        if step.removed.is_zero() {
            return Ok((current, steps));
        }
        current = next;
        steps += 1;
    }
}

/// The regular construction followed by reduction to the fixpoint.
pub fn algorithm_quotient<F: Field>(g: &LieAlgebra<F>) -> Result<Representation<F>> {
    let regular = algorithm_regular(g)?;
    let (rep, reductions) = reduce_to_fixpoint(&regular)?;
    Ok(rep.with_provenance(Provenance::Quotient { reductions }))
}
