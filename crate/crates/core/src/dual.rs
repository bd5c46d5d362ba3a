//! The submodule of `U(g)*` generated by the functionals dual to the
//! central basis vectors, on the monomials kept by regular pruning.
//!
//! A functional is a coordinate vector indexed by the active monomials; it
//! vanishes on every inactive monomial.

use std::collections::VecDeque;

use crate::error::Result;
use crate::field::Field;
use crate::lie_algebra::{AdaptedBasis, LieAlgebra};
use crate::linalg::{Echelon, SparseMatrix, SparseVec, Subspace};
use crate::regular::pruned_uea;
use crate::representation::{Provenance, Representation};
use crate::uea::TruncatedUea;

/// Action of the adapted basis on functionals: `(x·f)(a) = -f(x a)`, so the
/// matrix of `x_i` is `-L_i^T` for the left multiplication matrix `L_i`.
#[derive(Debug, Clone)]
pub struct DualAction<F: Field> {
    uea: TruncatedUea<F>,
    /// Position in the active order of each monomial index.
    position: Vec<Option<usize>>,
    matrices: Vec<SparseMatrix<F>>,
}

impl<F: Field> DualAction<F> {
    pub fn new(uea: TruncatedUea<F>) -> Self {
        let f = uea.field().clone();
        let minus_one = f.neg(&f.one());
        let matrices = (0..uea.algebra().dim())
            .map(|i| uea.action_matrix(i).transpose().scale(&minus_one))
            .collect();
        let mut position = vec![None; uea.monomials().len()];
        for (p, m) in uea.active_indices().into_iter().enumerate() {
            position[m] = Some(p);
        }
        DualAction { uea, position, matrices }
    }

    pub fn uea(&self) -> &TruncatedUea<F> {
        &self.uea
    }

    /// Number of coordinates of a functional.
    pub fn len(&self) -> usize {
        self.uea.active_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The functional dual to monomial `m` (1 on `m`, 0 on all others);
    /// `None` if `m` is inactive.
    pub fn delta(&self, m: usize) -> Option<SparseVec<F::Elem>> {
        self.position[m].map(|p| vec![(p, self.uea.field().one())])
    }

    pub fn act(&self, i: usize, f: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.matrices[i].mul_vec(f)
    }

    pub fn matrix(&self, i: usize) -> &SparseMatrix<F> {
        &self.matrices[i]
    }
}

/// Closure of `generators` under the action, as an echelonized subspace of
/// the functional space.
pub fn spin_submodule<F: Field>(action: &DualAction<F>, generators: &[SparseVec<F::Elem>]) -> Subspace<F> {
    let field = action.uea().field().clone();
    let d = action.uea().algebra().dim();
    let mut ech = Echelon::new(field, action.len());
    let mut queue = VecDeque::new();
    for g in generators {
        if ech.insert(g).is_some() {
            queue.push_back(g.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        for i in 0..d {
            let w = action.act(i, &v);
            if ech.insert(&w).is_some() {
                queue.push_back(w);
            }
        }
    }
    Subspace::from_echelon(ech)
}

/// The generated module together with its ambient data.
#[derive(Debug, Clone)]
pub struct DualModule<F: Field> {
    pub action: DualAction<F>,
    pub adapted: AdaptedBasis<F>,
    /// Basis of the module inside the functional space.
    pub module: Subspace<F>,
    pub representation: Representation<F>,
}

pub fn dual_module<F: Field>(g: &LieAlgebra<F>) -> Result<DualModule<F>> {
    let (uea, adapted) = pruned_uea(g)?;
    let action = DualAction::new(uea);
    let generators: Vec<_> = (0..g.dim())
        .filter(|&k| adapted.central[k])
        .filter_map(|k| action.delta(action.uea().generator_monomial(k)))
        .collect();
    let module = spin_submodule(&action, &generators);
    let field = g.field().clone();
    let n = module.dim();
    let mats: Vec<SparseMatrix<F>> = (0..g.dim())
        .map(|i| {
            let columns: Vec<SparseVec<F::Elem>> = module
                .basis()
                .iter()
                .map(|b| {
                    let image = action.act(i, b);
                    let coords = module.coordinates(&image).expect("module is closed under the action");
                    coords.into_iter().enumerate().filter(|(_, c)| !field.is_zero(c)).collect()
                })
                .collect();
            SparseMatrix::from_columns(field.clone(), n, &columns)
        })
        .collect();
    let representation = Representation::from_adapted(g.clone(), n, &mats, &adapted.inverse, Provenance::Dual)?;
    Ok(DualModule {
        action,
        adapted,
        module,
        representation,
    })
}

pub fn algorithm_dual<F: Field>(g: &LieAlgebra<F>) -> Result<Representation<F>> {
    Ok(dual_module(g)?.representation)
}
