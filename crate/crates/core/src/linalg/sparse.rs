use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;

/// Sparse vector: `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `y += a * x` on sparse vectors.
pub fn axpy<F: Field>(field: &F, y: &SparseVec<F::Elem>, a: &F::Elem, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    if field.is_zero(a) || x.is_empty() {
        return y.clone();
    }
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        match (y.get(i), x.get(j)) {
            (Some((iy, vy)), Some((ix, vx))) if iy == ix => {
                let mut v = vy.clone();
                field.add_mul_assign(&mut v, a, vx);
                if !field.is_zero(&v) {
                    out.push((*iy, v));
                }
                i += 1;
                j += 1;
            }
            (Some((iy, vy)), Some((ix, _))) if iy < ix => {
                out.push((*iy, vy.clone()));
                i += 1;
            }
            (Some((iy, vy)), None) => {
                out.push((*iy, vy.clone()));
                i += 1;
            }
            (_, Some((ix, vx))) => {
                out.push((*ix, field.mul(a, vx)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

pub fn scale<F: Field>(field: &F, a: &F::Elem, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    if field.is_zero(a) {
        return Vec::new();
    }
    x.iter().map(|(i, v)| (*i, field.mul(a, v))).collect()
}

pub fn get<E>(x: &SparseVec<E>, index: usize) -> Option<&E> {
    x.binary_search_by_key(&index, |(i, _)| *i).ok().map(|pos| &x[pos].1)
}

pub fn to_dense<F: Field>(field: &F, x: &SparseVec<F::Elem>, len: usize) -> Vec<F::Elem> {
    let mut out = vec![field.zero(); len];
    for (i, v) in x {
        out[*i] = v.clone();
    }
    out
}

pub fn from_dense<F: Field>(field: &F, x: &[F::Elem]) -> SparseVec<F::Elem> {
    x.iter()
        .enumerate()
        .filter(|(_, v)| !field.is_zero(v))
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Collects unsorted terms (possibly repeated indices) into a sparse vector.
#[derive(Debug, Clone)]
pub struct Accumulator<F: Field> {
    terms: BTreeMap<usize, F::Elem>,
}

impl<F: Field> Default for Accumulator<F> {
    fn default() -> Self {
        Accumulator { terms: BTreeMap::new() }
    }
}

impl<F: Field> Accumulator<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, field: &F, index: usize, value: &F::Elem) {
        if field.is_zero(value) {
            return;
        }
        match self.terms.get_mut(&index) {
            Some(v) => *v = field.add(v, value),
            None => {
                self.terms.insert(index, value.clone());
            }
        }
    }

    pub fn add_mul(&mut self, field: &F, index: usize, a: &F::Elem, b: &F::Elem) {
        if field.is_zero(a) || field.is_zero(b) {
            return;
        }
        match self.terms.get_mut(&index) {
            Some(v) => field.add_mul_assign(v, a, b),
            None => {
                self.terms.insert(index, field.mul(a, b));
            }
        }
    }

    pub fn add_scaled(&mut self, field: &F, a: &F::Elem, x: &SparseVec<F::Elem>) {
        for (i, v) in x {
            self.add_mul(field, *i, a, v);
        }
    }

    pub fn finish(self, field: &F) -> SparseVec<F::Elem> {
        self.terms.into_iter().filter(|(_, v)| !field.is_zero(v)).collect()
    }
}

/// Row-major sparse matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix<F: Field> {
    field: F,
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(field: F, nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            field,
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let one = field.one();
        let rows = (0..n).map(|i| vec![(i, one.clone())]).collect();
        SparseMatrix { field, nrows: n, ncols: n, rows }
    }

    pub fn from_rows(field: F, ncols: usize, rows: Vec<SparseVec<F::Elem>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.iter().all(|(c, _)| *c < ncols)));
        SparseMatrix {
            field,
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    pub fn from_columns(field: F, nrows: usize, columns: &[SparseVec<F::Elem>]) -> Self {
        let mut rows: Vec<SparseVec<F::Elem>> = vec![Vec::new(); nrows];
        for (c, col) in columns.iter().enumerate() {
            for (r, v) in col {
                rows[*r].push((c, v.clone()));
            }
        }
        SparseMatrix {
            field,
            nrows,
            ncols: columns.len(),
            rows,
        }
    }

    pub fn from_dense(field: F, rows: &[Vec<F::Elem>], ncols: usize) -> Self {
        let rows = rows.iter().map(|r| from_dense(&field, r)).collect();
        SparseMatrix::from_rows(field, ncols, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nrows(&self) -> usize {
        self.nrows
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }
    pub fn row(&self, r: usize) -> &SparseVec<F::Elem> {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> F::Elem {
        get(&self.rows[r], c).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, r: usize, c: usize, value: F::Elem) {
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&c, |(i, _)| *i) {
            Ok(pos) if self.field.is_zero(&value) => {
                row.remove(pos);
            }
            Ok(pos) => row[pos].1 = value,
            Err(_) if self.field.is_zero(&value) => {}
            Err(pos) => row.insert(pos, (c, value)),
        }
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        self.rows.iter().map(|r| to_dense(&self.field, r, self.ncols)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut rows: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                rows[*c].push((r, v.clone()));
            }
        }
        SparseMatrix {
            field: self.field.clone(),
            nrows: self.ncols,
            ncols: self.nrows,
            rows,
        }
    }

    /// Column vectors, i.e. the rows of the transpose.
    pub fn columns(&self) -> Vec<SparseVec<F::Elem>> {
        self.transpose().rows
    }

    pub fn mul_vec(&self, x: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            let mut acc = self.field.zero();
            let (mut i, mut j) = (0, 0);
            while i < row.len() && j < x.len() {
                match row[i].0.cmp(&x[j].0) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        self.field.add_mul_assign(&mut acc, &row[i].1, &x[j].1);
                        i += 1;
                        j += 1;
                    }
                }
            }
            if !self.field.is_zero(&acc) {
                out.push((r, acc));
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.ncols != other.nrows {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: other.nrows,
            });
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = Accumulator::new();
                for (k, a) in row {
                    acc.add_scaled(&self.field, a, &other.rows[*k]);
                }
                acc.finish(&self.field)
            })
            .collect();
        Ok(SparseMatrix {
            field: self.field.clone(),
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        })
    }

    /// `self + a * other`
    pub fn add_scaled(&self, a: &F::Elem, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.nrows * self.ncols,
                found: other.nrows * other.ncols,
            });
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(x, y)| axpy(&self.field, x, a, y))
            .collect();
        Ok(SparseMatrix {
            field: self.field.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        })
    }

    pub fn scale(&self, a: &F::Elem) -> Self {
        SparseMatrix {
            field: self.field.clone(),
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| scale(&self.field, a, r)).collect(),
        }
    }

    /// `self * other - other * self`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.mul(other)?;
        let ba = other.mul(self)?;
        ab.add_scaled(&self.field.neg(&self.field.one()), &ba)
    }

    /// Linear combination `sum c_k M_k` of equally shaped matrices.
    pub fn linear_combination(field: &F, nrows: usize, ncols: usize, terms: &[(F::Elem, &Self)]) -> Result<Self> {
        let mut accs: Vec<Accumulator<F>> = (0..nrows).map(|_| Accumulator::new()).collect();
        for (c, m) in terms {
            if m.nrows != nrows || m.ncols != ncols {
                return Err(Error::DimensionMismatch {
                    expected: nrows * ncols,
                    found: m.nrows * m.ncols,
                });
            }
            if field.is_zero(c) {
                continue;
            }
            for (r, row) in m.rows.iter().enumerate() {
                accs[r].add_scaled(field, c, row);
            }
        }
        Ok(SparseMatrix {
            field: field.clone(),
            nrows,
            ncols,
            rows: accs.into_iter().map(|a| a.finish(field)).collect(),
        })
    }

    pub fn is_strictly_lower_triangular(&self) -> bool {
        self.rows.iter().enumerate().all(|(r, row)| row.iter().all(|(c, _)| *c < r))
    }

    /// Nilpotency index bound check: `self^k == 0`.
    pub fn is_nilpotent_within(&self, k: usize) -> bool {
        if self.nrows != self.ncols {
            return false;
        }
        let mut power = SparseMatrix::identity(self.field.clone(), self.nrows);
        for _ in 0..k {
            power = power.mul(self).expect("square");
            if power.is_zero() {
                return true;
            }
        }
        power.is_zero()
    }
}
