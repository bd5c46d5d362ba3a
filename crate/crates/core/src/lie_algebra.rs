//! Lie algebras given by structure constants.
//!
//! Indices are 0-based throughout the library; the file formats and CLI use
//! 1-based indices.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::sparse::{from_dense, to_dense};
use crate::linalg::{Accumulator, Echelon, Matrix, SparseVec, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra<F: Field> {
    field: F,
    dim: usize,
    /// `table[i * dim + j]` holds `[x_i, x_j]`; antisymmetric by construction.
    table: Vec<SparseVec<F::Elem>>,
}

/// Ordered basis adapted to the lower central series and the center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBasis<F: Field> {
    /// Column `k` holds the `k`-th adapted basis vector in input coordinates.
    pub change_of_basis: Matrix<F>,
    pub inverse: Matrix<F>,
    pub weights: Vec<usize>,
    pub central: Vec<bool>,
}

/// Order of the weight layers in an adapted basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerOrder {
    /// Weight 1 first.
    Ascending,
    /// Top of the lower central series first.
    Descending,
}

/// A central series `g = g_0 > g_1 > ... > g_d = 0` with one-dimensional steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralSeries<F: Field> {
    /// `a_1, ..., a_d` in input coordinates; `g_i = span(a_{i+1}, ..., a_d)`.
    pub basis: Vec<Vec<F::Elem>>,
    pub chain: Vec<Subspace<F>>,
}

impl<F: Field> LieAlgebra<F> {
    /// Builds an algebra from the brackets `[x_i, x_j]` with `i < j`; pairs not
    /// listed bracket to zero.
    pub fn from_brackets(
        field: F,
        dim: usize,
        brackets: impl IntoIterator<Item = (usize, usize, SparseVec<F::Elem>)>,
    ) -> Result<Self> {
        let mut table = vec![Vec::new(); dim * dim];
        for (i, j, v) in brackets {
            for &idx in &[i, j] {
                if idx >= dim {
                    return Err(Error::IndexOutOfRange { index: idx, dim });
                }
            }
            if i >= j {
                return Err(Error::InvalidParameter(format!(
                    "bracket entries need i < j, got ({i}, {j})"
                )));
            }
            if let Some((k, _)) = v.iter().find(|(k, _)| *k >= dim) {
                return Err(Error::IndexOutOfRange { index: *k, dim });
            }
            let mut acc = Accumulator::new();
            acc.add_scaled(&field, &field.one(), &table[i * dim + j]);
            acc.add_scaled(&field, &field.one(), &v);
            let v = acc.finish(&field);
            let neg: SparseVec<F::Elem> = v.iter().map(|(k, c)| (*k, field.neg(c))).collect();
            table[i * dim + j] = v;
            table[j * dim + i] = neg;
        }
        Ok(LieAlgebra { field, dim, table })
    }

    pub fn abelian(field: F, dim: usize) -> Self {
        LieAlgebra {
            field,
            dim,
            table: vec![Vec::new(); dim * dim],
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[x_i, x_j]` in coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec<F::Elem> {
        &self.table[i * self.dim + j]
    }

    /// Nonzero brackets `(i, j, [x_i, x_j])` with `i < j`.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &SparseVec<F::Elem>)> + '_ {
        (0..self.dim).flat_map(move |i| {
            ((i + 1)..self.dim).filter_map(move |j| {
                let v = self.bracket_basis(i, j);
                (!v.is_empty()).then_some((i, j, v))
            })
        })
    }

    pub fn bracket_sparse(&self, x: &SparseVec<F::Elem>, y: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let f = &self.field;
        let mut acc = Accumulator::new();
        for (i, a) in x {
            for (j, b) in y {
                if i == j {
                    continue;
                }
                let ab = f.mul(a, b);
                acc.add_scaled(f, &ab, self.bracket_basis(*i, *j));
            }
        }
        acc.finish(f)
    }

    pub fn bracket(&self, x: &[F::Elem], y: &[F::Elem]) -> Result<Vec<F::Elem>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: v.len(),
                });
            }
        }
        let r = self.bracket_sparse(&from_dense(&self.field, x), &from_dense(&self.field, y));
        Ok(to_dense(&self.field, &r, self.dim))
    }

    /// Triples `i < j < k` where the Jacobi identity fails.
    pub fn check_jacobi(&self) -> Vec<(usize, usize, usize)> {
        let f = &self.field;
        let d = self.dim;
        let mut bad = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let mut acc = Accumulator::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (l, coef) in self.bracket_basis(a, b) {
                            acc.add_scaled(f, coef, self.bracket_basis(*l, c));
                        }
                    }
                    if !acc.finish(f).is_empty() {
                        bad.push((i, j, k));
                    }
                }
            }
        }
        bad
    }

    /// `[g, s]` for a subspace `s`.
    pub fn bracket_with(&self, s: &Subspace<F>) -> Subspace<F> {
        let mut ech = Echelon::new(self.field.clone(), self.dim);
        for i in 0..self.dim {
            let xi = vec![(i, self.field.one())];
            for v in s.basis() {
                ech.insert(&self.bracket_sparse(&xi, v));
            }
        }
        Subspace::from_echelon(ech)
    }

    /// `g^1 = g, g^{m+1} = [g, g^m]`, ending with the zero subspace.
    pub fn lower_central_series(&self) -> Result<Vec<Subspace<F>>> {
        let mut terms = vec![Subspace::full(self.field.clone(), self.dim)];
        loop {
            let last = terms.last().expect("nonempty");
            if last.is_zero() {
                return Ok(terms);
            }
            let next = self.bracket_with(last);
            if next.dim() == last.dim() {
                return Err(Error::NotNilpotent { stable_dim: next.dim() });
            }
            terms.push(next);
        }
    }

    /// Nilpotency class; 0 for the zero algebra.
    pub fn nilpotency_class(&self) -> Result<usize> {
        Ok(self.lower_central_series()?.len() - 1)
    }

    pub fn center(&self) -> Subspace<F> {
        // z = sum_k zeta_k x_k is central iff sum_k zeta_k [x_i, x_k] = 0 for all i.
        let d = self.dim;
        let mut rows: Vec<Accumulator<F>> = (0..d * d).map(|_| Accumulator::new()).collect();
        for i in 0..d {
            for k in 0..d {
                for (r, c) in self.bracket_basis(i, k) {
                    rows[i * d + r].add(&self.field, k, c);
                }
            }
        }
        let rows: Vec<_> = rows.into_iter().map(|a| a.finish(&self.field)).collect();
        let basis = crate::linalg::kernel_basis(&self.field, d, &rows);
        Subspace::from_sparse(self.field.clone(), d, &basis)
    }

    /// Rewrites the structure constants in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &Matrix<F>) -> Result<Self> {
        let d = self.dim;
        if p.nrows() != d || p.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: p.nrows(),
            });
        }
        let inv = p
            .inverse()
            .ok_or_else(|| Error::InvalidParameter("change of basis is singular".into()))?;
        let cols: Vec<SparseVec<F::Elem>> = (0..d).map(|k| p.column_sparse(k)).collect();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in (i + 1)..d {
                let b = self.bracket_sparse(&cols[i], &cols[j]);
                if b.is_empty() {
                    continue;
                }
                let dense = inv.mul_vec(&to_dense(&self.field, &b, d))?;
                brackets.push((i, j, from_dense(&self.field, &dense)));
            }
        }
        LieAlgebra::from_brackets(self.field.clone(), d, brackets)
    }

    /// Basis adapted to the lower central series and the center, together
    /// with the algebra rewritten in it.
    ///
    /// Layers are processed from the top weight down. Layer `m` first takes
    /// echelon vectors of `Z(g) ∩ g^m` independent of what is already chosen,
    /// then echelon vectors of `g^m`. The final order is by increasing weight,
    /// keeping the selection order inside a layer.
    pub fn adapted_basis(&self) -> Result<(AdaptedBasis<F>, LieAlgebra<F>)> {
        self.adapted_basis_ordered(LayerOrder::Ascending)
    }

    /// As [`adapted_basis`](Self::adapted_basis) with a choice of layer order;
    /// the order inside each layer is the same for both.
    pub fn adapted_basis_ordered(&self, order: LayerOrder) -> Result<(AdaptedBasis<F>, LieAlgebra<F>)> {
        let lcs = self.lower_central_series()?;
        let class = lcs.len() - 1;
        let center = self.center();
        let mut ech = Echelon::new(self.field.clone(), self.dim);
        let mut layers: Vec<Vec<(SparseVec<F::Elem>, bool)>> = vec![Vec::new(); class + 1];
        for m in (1..=class).rev() {
            let term = &lcs[m - 1];
            let z_m = center.intersect(term)?;
            for v in z_m.basis() {
                if ech.insert(v).is_some() {
                    layers[m].push((v.clone(), true));
                }
            }
            for v in term.basis() {
                if ech.insert(v).is_some() {
                    layers[m].push((v.clone(), false));
                }
            }
        }
        let mut cols = Vec::with_capacity(self.dim);
        let mut weights = Vec::with_capacity(self.dim);
        let mut central = Vec::with_capacity(self.dim);
        let mut indexed: Vec<_> = layers.into_iter().enumerate().collect();
        if order == LayerOrder::Descending {
            indexed.reverse();
        }
        for (m, layer) in indexed {
            for (v, is_central) in layer {
                cols.push(v);
                weights.push(m);
                central.push(is_central);
            }
        }
        debug_assert_eq!(cols.len(), self.dim);
        let p = Matrix::from_sparse_columns(self.field.clone(), self.dim, &cols);
        let inverse = p.inverse().expect("adapted basis is a basis");
        let rewritten = self.change_basis(&p)?;
        Ok((
            AdaptedBasis {
                change_of_basis: p,
                inverse,
                weights,
                central,
            },
            rewritten,
        ))
    }

    /// Refinement of the lower central series through the adapted basis.
    pub fn refined_central_series(&self) -> Result<CentralSeries<F>> {
        let (adapted, _) = self.adapted_basis()?;
        let d = self.dim;
        let basis: Vec<Vec<F::Elem>> = (0..d).map(|k| adapted.change_of_basis.column(k)).collect();
        let chain = (0..=d)
            .map(|i| Subspace::span(self.field.clone(), d, &basis[i..]))
            .collect::<Result<Vec<_>>>()?;
        Ok(CentralSeries { basis, chain })
    }

    pub fn is_ideal(&self, s: &Subspace<F>) -> bool {
        (0..self.dim).all(|i| {
            let xi = vec![(i, self.field.one())];
            s.basis().iter().all(|v| s.contains(&self.bracket_sparse(&xi, v)))
        })
    }

    /// `g / ideal` in the basis of the non-pivot coordinates of the ideal,
    /// together with the projection matrix.
    pub fn quotient(&self, ideal: &Subspace<F>) -> Result<(LieAlgebra<F>, Matrix<F>)> {
        if ideal.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: ideal.ambient_dim(),
            });
        }
        if ideal.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let kept: Vec<usize> = (0..self.dim).filter(|c| ideal.pivots().binary_search(c).is_err()).collect();
        let mut new_index = vec![usize::MAX; self.dim];
        for (n, &c) in kept.iter().enumerate() {
            new_index[c] = n;
        }
        let project = |v: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
            ideal
                .reduce(v)
                .into_iter()
                .map(|(c, e)| (new_index[c], e))
                .collect()
        };
        let mut projection = Matrix::zeros(self.field.clone(), kept.len(), self.dim);
        for c in 0..self.dim {
            for (r, e) in project(&vec![(c, self.field.one())]) {
                projection.set(r, c, e);
            }
        }
        let mut brackets = Vec::new();
        for (a, &i) in kept.iter().enumerate() {
            for (b, &j) in kept.iter().enumerate().skip(a + 1) {
                let v = project(self.bracket_basis(i, j));
                if !v.is_empty() {
                    brackets.push((a, b, v));
                }
            }
        }
        let q = LieAlgebra::from_brackets(self.field.clone(), kept.len(), brackets)?;
        Ok((q, projection))
    }

    /// Direct sum `self ⊕ other`, with `other`'s basis appended.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let off = self.dim;
        let mut brackets: Vec<_> = self.nonzero_brackets().map(|(i, j, v)| (i, j, v.clone())).collect();
        brackets.extend(
            other
                .nonzero_brackets()
                .map(|(i, j, v)| (i + off, j + off, v.iter().map(|(k, c)| (k + off, c.clone())).collect())),
        );
        LieAlgebra::from_brackets(self.field.clone(), self.dim + other.dim, brackets)
    }

    /// Second Betti number with trivial coefficients, `dim Z^2 - dim B^2`.
    pub fn betti2(&self) -> usize {
        let f = &self.field;
        let d = self.dim;
        let pair = |i: usize, j: usize| -> usize {
            debug_assert!(i < j);
            i * d - i * (i + 1) / 2 + (j - i - 1)
        };
        let n_pairs = d * d.saturating_sub(1) / 2;
        // Equations: omega([x_a, x_b], x_c) summed cyclically over each triple.
        let mut ech = Echelon::new(f.clone(), n_pairs);
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let mut acc = Accumulator::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (l, coef) in self.bracket_basis(a, b) {
                            match l.cmp(&c) {
                                std::cmp::Ordering::Less => acc.add(f, pair(*l, c), coef),
                                std::cmp::Ordering::Greater => acc.add(f, pair(c, *l), &f.neg(coef)),
                                std::cmp::Ordering::Equal => {}
                            }
                        }
                    }
                    ech.insert(&acc.finish(f));
                }
            }
        }
        let dim_z2 = n_pairs - ech.rank();
        // d(phi)(x_i, x_j) = -phi([x_i, x_j]); its rank is dim [g, g].
        let mut image = Echelon::new(f.clone(), d);
        for (_, _, v) in self.nonzero_brackets() {
            image.insert(v);
        }
        dim_z2 - image.rank()
    }
}

impl<F: Field> CentralSeries<F> {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// `[g, g_i] ⊆ g_{i+1}` for every `i`.
    pub fn is_central_in(&self, g: &LieAlgebra<F>) -> bool {
        let f = g.field();
        (0..self.basis.len()).all(|i| {
            let a = from_dense(f, &self.basis[i]);
            (0..g.dim()).all(|k| self.chain[i + 1].contains(&g.bracket_sparse(&vec![(k, f.one())], &a)))
        })
    }
}
