use std::collections::{BTreeMap, HashMap};

use super::sparse::SparseVec;
use crate::field::Field;

/// Incrementally built echelon basis of sparse vectors.
///
/// Every stored row has a distinct pivot (its leading index) with value 1.
/// Rows are not kept mutually reduced; [`Echelon::into_rref`] does that.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivot_row: HashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn has_pivot(&self, col: usize) -> bool {
        self.pivot_row.contains_key(&col)
    }

    /// Reduces `v` against the stored rows. The result is zero at every
    /// pivot column; it is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.reduce_tracking(v, |_, _| {})
    }

    /// Like [`reduce`](Self::reduce), reporting each `(row, factor)` subtracted.
    pub fn reduce_tracking(
        &self,
        v: &SparseVec<F::Elem>,
        mut on_subtract: impl FnMut(usize, &F::Elem),
    ) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut work: BTreeMap<usize, F::Elem> = v.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((col, val)) = work.pop_first() {
            if f.is_zero(&val) {
                continue;
            }
            match self.pivot_row.get(&col) {
                Some(&r) => {
                    on_subtract(r, &val);
                    let neg = f.neg(&val);
                    for (c, e) in self.rows[r].iter().skip(1) {
                        match work.get_mut(c) {
                            Some(w) => f.add_mul_assign(w, &neg, e),
                            None => {
                                work.insert(*c, f.mul(&neg, e));
                            }
                        }
                    }
                }
                None => out.push((col, val)),
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns the index of the new row, or `None`
    /// if `v` was already in the span.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> Option<usize> {
        let reduced = self.reduce(v);
        self.push_reduced(reduced)
    }

    /// Adds an already reduced vector (output of [`reduce`](Self::reduce)).
    pub fn push_reduced(&mut self, reduced: SparseVec<F::Elem>) -> Option<usize> {
        let (pivot, lead) = reduced.first()?.clone();
        let inv = self.field.inv(&lead).expect("nonzero leading entry");
        let row: SparseVec<F::Elem> = if self.field.is_one(&lead) {
            reduced
        } else {
            reduced.iter().map(|(c, e)| (*c, self.field.mul(&inv, e))).collect()
        };
        let idx = self.rows.len();
        self.rows.push(row);
        self.pivot_row.insert(pivot, idx);
        Some(idx)
    }

    /// Fully reduced rows sorted by pivot, and the pivots.
    pub fn into_rref(self) -> (Vec<SparseVec<F::Elem>>, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        let mut out = Vec::with_capacity(order.len());
        let mut pivots = Vec::with_capacity(order.len());
        for r in order {
            let row = &self.rows[r];
            let (p, one) = row[0].clone();
            let tail: SparseVec<F::Elem> = row[1..].to_vec();
            let mut reduced = vec![(p, one)];
            reduced.extend(self.reduce(&tail));
            out.push(reduced);
            pivots.push(p);
        }
        (out, pivots)
    }
}

/// Kernel of the linear map whose matrix has the given sparse rows
/// (over `ncols` unknowns), as a list of basis vectors. One basis vector per
/// free column, in increasing free-column order, with a 1 at that column.
pub fn kernel_basis<F: Field>(field: &F, ncols: usize, rows: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let mut ech = Echelon::new(field.clone(), ncols);
    for r in rows {
        ech.insert(r);
    }
    let (rref, pivots) = ech.into_rref();
    kernel_from_rref(field, ncols, &rref, &pivots)
}

pub(crate) fn kernel_from_rref<F: Field>(
    field: &F,
    ncols: usize,
    rref: &[SparseVec<F::Elem>],
    pivots: &[usize],
) -> Vec<SparseVec<F::Elem>> {
    let mut is_pivot = vec![false; ncols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    // column -> list of (pivot, coefficient) over rows having an entry there
    let mut by_col: HashMap<usize, Vec<(usize, F::Elem)>> = HashMap::new();
    for (row, &p) in rref.iter().zip(pivots) {
        for (c, e) in row.iter().skip(1) {
            by_col.entry(*c).or_default().push((p, e.clone()));
        }
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !is_pivot[*c]) {
        let mut v: SparseVec<F::Elem> = by_col
            .get(&free)
            .map(|entries| entries.iter().map(|(p, e)| (*p, field.neg(e))).collect())
            .unwrap_or_default();
        v.push((free, field.one()));
        v.sort_by_key(|(i, _)| *i);
        basis.push(v);
    }
    basis
}
