//! Reference dimension tables for `U_n`, `N_{n,c}` and `f_n`, and a runner
//! that recomputes one row and compares.

use std::fmt;
use std::time::{Duration, Instant};

use crate::affine::{algorithm_affine, AffineConfig, AffineOutcome};
use crate::catalog::CatalogName;
use crate::dual::algorithm_dual;
use crate::error::{Error, Result};
use crate::field::{Field, FieldKind, FieldSpec, PrimeField, Rationals};
use crate::quotient::algorithm_quotient;
use crate::regular::algorithm_regular;
use crate::representation::Representation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Regular,
    Quotient,
    Dual,
    Affine,
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Column::Regular => "regular",
            Column::Quotient => "quotient",
            Column::Dual => "dual",
            Column::Affine => "affine",
        })
    }
}

/// One published row. An Affine entry of `None` means the reference run failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceRow {
    pub algebra: CatalogName,
    pub field: FieldSpec,
    pub algebra_dim: usize,
    pub columns: Vec<(Column, Option<usize>)>,
}

impl ReferenceRow {
    pub fn label(&self) -> String {
        format!("{} over {}", self.algebra, self.field)
    }

    pub fn expected(&self, column: Column) -> Option<Option<usize>> {
        self.columns.iter().find(|(c, _)| *c == column).map(|(_, v)| *v)
    }
}

fn u_row(n: usize, field: FieldSpec) -> ReferenceRow {
    let (regular, dual) = match n {
        4 => (7, 5),
        5 => (15, 11),
        6 => (35, 17),
        _ => (79, 35),
    };
    let d = n * (n - 1) / 2;
    ReferenceRow {
        algebra: CatalogName::UpperTriangular(n),
        field,
        algebra_dim: d,
        columns: vec![
            (Column::Regular, Some(regular)),
            (Column::Dual, Some(dual)),
            (Column::Affine, Some(d + 1)),
        ],
    }
}

/// Rows of table 1 (`U_n` over `F_2`, `F_3`, `Q`), 2 (`N_{n,c}` over `Q`)
/// or 3 (`f_n`).
pub fn reference_table(which: u8) -> Result<Vec<ReferenceRow>> {
    match which {
        1 => {
            let mut rows = Vec::new();
            for field in [FieldSpec::prime(2)?, FieldSpec::prime(3)?, FieldSpec::RATIONALS] {
                for n in 4..=7 {
                    rows.push(u_row(n, field));
                }
            }
            Ok(rows)
        }
        2 => {
            let data = [
                (2, 5, 14, 20, Some(15)),
                (2, 6, 23, 34, Some(24)),
                (2, 7, 41, 65, None),
                (2, 8, 71, 117, None),
                (3, 4, 32, 41, Some(33)),
                (3, 5, 80, 113, None),
                (4, 3, 30, 36, Some(31)),
                (4, 4, 90, 113, None),
            ];
            Ok(data
                .iter()
                .map(|&(n, c, d, dim, affine)| ReferenceRow {
                    algebra: CatalogName::FreeNilpotent(n, c),
                    field: FieldSpec::RATIONALS,
                    algebra_dim: d,
                    columns: vec![(Column::Regular, Some(dim)), (Column::Dual, Some(dim)), (Column::Affine, affine)],
                })
                .collect())
        }
        3 => {
            let regular = [85, 105, 145, 185, 256, 316, 433, 538];
            let dual = [43, 53, 64, 77, 94, 111, 134, 158];
            Ok((13..=20)
                .zip(regular.iter().zip(&dual))
                .map(|(n, (&r, &q))| ReferenceRow {
                    algebra: CatalogName::Filiform(n),
                    field: FieldSpec::RATIONALS,
                    algebra_dim: n,
                    columns: vec![
                        (Column::Regular, Some(r)),
                        (Column::Quotient, Some(q)),
                        (Column::Dual, Some(q)),
                        (Column::Affine, None),
                    ],
                })
                .collect())
        }
        _ => Err(Error::InvalidParameter(format!("no table {which}; choose 1, 2 or 3"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Match,
    Diff { ours: usize, expected: usize },
    /// Affine gave up; `expected_success` says whether the reference run found one.
    AffineFail { deepest_step: usize, expected_success: bool },
    /// Affine found a representation where the reference run did not.
    AffineSuccess { ours: usize },
}

impl Status {
    /// Whether this cell counts against the row: a dimension mismatch on any
    /// column, including an Affine success of the wrong size.
    pub fn is_diff(&self) -> bool {
        matches!(self, Status::Diff { .. })
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::Match => write!(f, "MATCH"),
            Status::Diff { ours, expected } => write!(f, "DIFF({ours}, {expected})"),
            Status::AffineFail {
                deepest_step,
                expected_success,
            } => {
                write!(f, "AFFINE-FAIL(step {deepest_step})")?;
                if *expected_success {
                    write!(f, " reference succeeded")?;
                }
                Ok(())
            }
            Status::AffineSuccess { ours } => write!(f, "AFFINE-SUCCESS({ours}) reference failed"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Cell {
    pub column: Column,
    pub ours: Option<usize>,
    pub status: Status,
    /// Homomorphism and kernel checks on the computed representation.
    pub verified: bool,
    pub elapsed: Duration,
}

#[derive(Debug, Clone)]
pub struct RowReport {
    pub row: ReferenceRow,
    pub computed_algebra_dim: usize,
    pub cells: Vec<Cell>,
}

impl RowReport {
    pub fn diff_count(&self) -> usize {
        self.cells.iter().filter(|c| c.status.is_diff()).count() + usize::from(self.computed_algebra_dim != self.row.algebra_dim)
    }

    pub fn all_verified(&self) -> bool {
        self.cells.iter().all(|c| c.verified)
    }

    pub fn cell(&self, column: Column) -> Option<&Cell> {
        self.cells.iter().find(|c| c.column == column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[derive(Default)]
pub struct RunOptions {
    pub affine: AffineConfig,
    pub skip_affine: bool,
}


fn checked<F: Field>(rep: &Representation<F>) -> bool {
    rep.is_homomorphism().is_ok() && rep.is_faithful()
}

fn dimension_status(ours: usize, expected: Option<usize>) -> Status {
    match expected {
        Some(e) if e != ours => Status::Diff { ours, expected: e },
        _ => Status::Match,
    }
}

fn run_in<F: Field>(row: &ReferenceRow, field: F, options: &RunOptions) -> Result<RowReport> {
    let g = row.algebra.build(field)?;
    let mut cells = Vec::new();
    for &(column, expected) in &row.columns {
        let start = Instant::now();
        let cell = match column {
            Column::Affine => {
                if options.skip_affine {
                    continue;
                }
                match algorithm_affine(&g, &options.affine)? {
                    AffineOutcome::Success(rep) => {
                        let ours = rep.dim();
                        let status = match expected {
                            Some(e) => dimension_status(ours, Some(e)),
                            None if ours == g.dim() + 1 => Status::AffineSuccess { ours },
                            None => Status::Diff {
                                ours,
                                expected: g.dim() + 1,
                            },
                        };
                        Cell {
                            column,
                            ours: Some(ours),
                            status,
                            verified: checked(&rep),
                            elapsed: start.elapsed(),
                        }
                    }
                    AffineOutcome::Fail { deepest_step, .. } => Cell {
                        column,
                        ours: None,
                        status: Status::AffineFail {
                            deepest_step,
                            expected_success: expected.is_some(),
                        },
                        verified: true,
                        elapsed: start.elapsed(),
                    },
                }
            }
            _ => {
                let rep = match column {
                    Column::Regular => algorithm_regular(&g)?,
                    Column::Quotient => algorithm_quotient(&g)?,
                    _ => algorithm_dual(&g)?,
                };
                Cell {
                    column,
                    ours: Some(rep.dim()),
                    status: dimension_status(rep.dim(), expected),
                    verified: checked(&rep),
                    elapsed: start.elapsed(),
                }
            }
        };
        cells.push(cell);
    }
    Ok(RowReport {
        row: row.clone(),
        computed_algebra_dim: g.dim(),
        cells,
    })
}

/// Recomputes every column of `row` and compares with the reference.
pub fn run_row(row: &ReferenceRow, options: &RunOptions) -> Result<RowReport> {
    match row.field.kind {
        FieldKind::Rationals => run_in(row, Rationals, options),
        FieldKind::PrimeField => run_in(row, PrimeField::new(row.field.characteristic)?, options),
    }
}
