use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("subspace is not contained in the enclosing space")]
    NotContained,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("Lie algebra is not nilpotent: lower central series stabilises at dimension {stable_dim}")]
    NotNilpotent { stable_dim: usize },
    #[error("subspace is not an ideal")]
    NotAnIdeal,
    #[error("matrices do not define a representation: bracket relation fails for basis pair ({0}, {1})")]
    NotAHomomorphism(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}
