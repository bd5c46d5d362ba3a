use super::echelon::{kernel_from_rref, Echelon};
use super::sparse::{from_dense, to_dense, SparseVec};
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::field::Field;

/// Dense row-major matrix over an exact field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    nrows: usize,
    ncols: usize,
    data: Vec<F::Elem>,
}

/// Outcome of [`Matrix::solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution<F: Field> {
    Consistent {
        particular: Vec<F::Elem>,
        nullspace: Subspace<F>,
    },
    Inconsistent,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, nrows: usize, ncols: usize) -> Self {
        let data = vec![field.zero(); nrows * ncols];
        Matrix { field, nrows, ncols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(Matrix {
            field,
            nrows,
            ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_rows(field, rows)
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

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.ncols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.ncols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.ncols..(r + 1) * self.ncols]
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.nrows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.nrows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec<F::Elem>> {
        (0..self.nrows).map(|r| from_dense(&self.field, self.row(r))).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.field.clone(), self.ncols, self.nrows);
        for r in 0..self.nrows {
            for c in 0..self.ncols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
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
        let f = &self.field;
        let mut out = Matrix::zeros(f.clone(), self.nrows, other.ncols);
        for r in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.ncols {
                    let idx = r * other.ncols + c;
                    f.add_mul_assign(&mut out.data[idx], a, other.get(k, c));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if x.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: x.len(),
            });
        }
        let f = &self.field;
        Ok((0..self.nrows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(x) {
                    f.add_mul_assign(&mut acc, a, b);
                }
                acc
            })
            .collect())
    }

    fn echelon(&self) -> Echelon<F> {
        let mut ech = Echelon::new(self.field.clone(), self.ncols);
        for r in 0..self.nrows {
            ech.insert(&from_dense(&self.field, self.row(r)));
        }
        ech
    }

    /// Reduced row echelon form (same shape, zero rows at the bottom),
    /// the rank, and the pivot columns.
    pub fn rref(&self) -> (Self, usize, Vec<usize>) {
        let (rows, pivots) = self.echelon().into_rref();
        let mut out = Matrix::zeros(self.field.clone(), self.nrows, self.ncols);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row {
                out.set(r, *c, v.clone());
            }
        }
        (out, pivots.len(), pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn nullspace(&self) -> Subspace<F> {
        let (rows, pivots) = self.echelon().into_rref();
        let basis = kernel_from_rref(&self.field, self.ncols, &rows, &pivots);
        Subspace::from_sparse(self.field.clone(), self.ncols, &basis)
    }

    /// Solves `self * x = rhs`.
    pub fn solve(&self, rhs: &[F::Elem]) -> Result<Solution<F>> {
        if rhs.len() != self.nrows {
            return Err(Error::DimensionMismatch {
                expected: self.nrows,
                found: rhs.len(),
            });
        }
        let n = self.ncols;
        let mut ech = Echelon::new(self.field.clone(), n + 1);
        for (r, b) in rhs.iter().enumerate() {
            let mut row = from_dense(&self.field, self.row(r));
            if !self.field.is_zero(b) {
                row.push((n, b.clone()));
            }
            ech.insert(&row);
        }
        if ech.has_pivot(n) {
            return Ok(Solution::Inconsistent);
        }
        let (rows, pivots) = ech.into_rref();
        let mut particular = vec![self.field.zero(); n];
        for (row, &p) in rows.iter().zip(&pivots) {
            if let Some((_, v)) = row.last().filter(|(c, _)| *c == n) {
                particular[p] = v.clone();
            }
        }
        let coeff_rows: Vec<SparseVec<F::Elem>> = rows
            .iter()
            .map(|r| r.iter().filter(|(c, _)| *c < n).cloned().collect())
            .collect();
        let basis = kernel_from_rref(&self.field, n, &coeff_rows, &pivots);
        Ok(Solution::Consistent {
            particular,
            nullspace: Subspace::from_sparse(self.field.clone(), n, &basis),
        })
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.nrows != self.ncols {
            return None;
        }
        let n = self.nrows;
        let f = &self.field;
        let mut ech = Echelon::new(f.clone(), 2 * n);
        for r in 0..n {
            let mut row = from_dense(f, self.row(r));
            row.push((n + r, f.one()));
            ech.insert(&row);
        }
        let (rows, pivots) = ech.into_rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(f.clone(), n, n);
        for (r, row) in rows.iter().enumerate() {
            for (c, v) in row.iter().filter(|(c, _)| *c >= n) {
                inv.set(r, c - n, v.clone());
            }
        }
        Some(inv)
    }

    pub fn column_sparse(&self, c: usize) -> SparseVec<F::Elem> {
        from_dense(&self.field, &self.column(c))
    }

    pub fn from_sparse_columns(field: F, nrows: usize, cols: &[SparseVec<F::Elem>]) -> Self {
        let mut m = Matrix::zeros(field.clone(), nrows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (r, v) in to_dense(&field, col, nrows).into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }
}
