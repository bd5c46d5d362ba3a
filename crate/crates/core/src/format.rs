//! JSON file formats for algebras and representations.
//!
//! Indices are 1-based and coefficients are strings, either integers or
//! fractions `p/q`. Unknown fields are rejected.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::lie_algebra::LieAlgebra;
use crate::linalg::SparseMatrix;
use crate::representation::{Provenance, Representation};

/// `[x_i, x_j] = Σ c_k x_k`, stored for `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dim: usize,
    /// `Q` or `GF(p)`.
    pub field: String,
    pub brackets: Vec<BracketEntry>,
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn one_based(k: usize, dim: usize) -> Result<usize> {
    if k == 0 || k > dim {
        return Err(Error::Parse(format!("index {k} outside 1..={dim}")));
    }
    Ok(k - 1)
}

impl AlgebraFile {
    pub fn from_algebra<F: Field>(g: &LieAlgebra<F>) -> Self {
        let f = g.field();
        let brackets = g
            .nonzero_brackets()
            .map(|(i, j, v)| BracketEntry {
                i: i + 1,
                j: j + 1,
                terms: v.iter().map(|(k, c)| (k + 1, f.format(c))).collect(),
            })
            .collect();
        AlgebraFile {
            dim: g.dim(),
            field: f.spec().to_string(),
            brackets,
        }
    }

    pub fn field_spec(&self) -> Result<FieldSpec> {
        FieldSpec::parse(&self.field)
    }

    /// Builds the algebra over `field`, which must match the file's field.
    /// Rejects tables that violate the Jacobi identity.
    pub fn to_algebra<F: Field>(&self, field: F) -> Result<LieAlgebra<F>> {
        if self.field_spec()? != field.spec() {
            return Err(Error::FieldMismatch);
        }
        let mut brackets = Vec::with_capacity(self.brackets.len());
        for e in &self.brackets {
            let (i, j) = (one_based(e.i, self.dim)?, one_based(e.j, self.dim)?);
            let mut v = Vec::with_capacity(e.terms.len());
            for (k, c) in &e.terms {
                v.push((one_based(*k, self.dim)?, field.parse(c)?));
            }
            v.sort_by_key(|(k, _)| *k);
            if v.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::Parse(format!("repeated basis index in bracket ({}, {})", e.i, e.j)));
            }
            brackets.push((i, j, v));
        }
        let g = LieAlgebra::from_brackets(field, self.dim, brackets)?;
        if let Some((i, j, k)) = g.check_jacobi().first() {
            return Err(Error::Parse(format!(
                "Jacobi identity fails for ({}, {}, {})",
                i + 1,
                j + 1,
                k + 1
            )));
        }
        Ok(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(parse_error)
    }
}

/// SHA-256 of the canonical JSON of the algebra, hex encoded.
pub fn algebra_checksum<F: Field>(g: &LieAlgebra<F>) -> String {
    let canonical = serde_json::to_string(&AlgebraFile::from_algebra(g)).expect("plain data serializes");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationFile {
    pub provenance: Provenance,
    pub algebra_checksum: String,
    pub dim: usize,
    /// One row-major grid per basis vector of the algebra.
    pub matrices: Vec<Vec<Vec<String>>>,
}

impl RepresentationFile {
    pub fn from_representation<F: Field>(rep: &Representation<F>) -> Self {
        let f = rep.field();
        let n = rep.dim();
        let matrices = rep
            .matrices()
            .iter()
            .map(|m| {
                (0..n)
                    .map(|r| {
                        let mut row = vec!["0".to_string(); n];
                        for (c, v) in m.row(r) {
                            row[*c] = f.format(v);
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        RepresentationFile {
            provenance: rep.provenance().clone(),
            algebra_checksum: algebra_checksum(rep.algebra()),
            dim: n,
            matrices,
        }
    }

    /// Attaches the matrices to `g`; the checksum must match.
    pub fn to_representation<F: Field>(&self, g: &LieAlgebra<F>) -> Result<Representation<F>> {
        if self.algebra_checksum != algebra_checksum(g) {
            return Err(Error::Parse("representation was computed for a different algebra".into()));
        }
        let f = g.field();
        let n = self.dim;
        let mut matrices = Vec::with_capacity(self.matrices.len());
        for grid in &self.matrices {
            if grid.len() != n || grid.iter().any(|row| row.len() != n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: grid.iter().map(Vec::len).find(|&l| l != n).unwrap_or(grid.len()),
                });
            }
            let mut rows = Vec::with_capacity(n);
            for row in grid {
                let mut sparse = Vec::new();
                for (c, s) in row.iter().enumerate() {
                    let v = f.parse(s)?;
                    if !f.is_zero(&v) {
                        sparse.push((c, v));
                    }
                }
                rows.push(sparse);
            }
            matrices.push(SparseMatrix::from_rows(f.clone(), n, rows));
        }
        Representation::new(g.clone(), n, matrices, self.provenance.clone())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(parse_error)
    }
}
