//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("variable index {index} out of range (universe has {n_vars} variables)")]
    VarOutOfRange { index: usize, n_vars: usize },

    #[error("generator index {index} out of range (algebra dimension {dim})")]
    GenOutOfRange { index: usize, dim: usize },

    #[error("operands live in different variable universes ({left} vs {right})")]
    MismatchedVariables { left: usize, right: usize },

    #[error("substitution image for x{index} has degree {degree} > 1")]
    SubstitutionDegree { index: usize, degree: u32 },

    #[error("matrix is not square: {rows} rows but row {row} has {cols} entries")]
    NonSquare {
        rows: usize,
        row: usize,
        cols: usize,
    },

    #[error("coefficient vector has length {got}, algebra dimension is {dim}")]
    LengthMismatch { got: usize, dim: usize },

    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),

    #[error("invalid reduction chain: {0}")]
    InvalidChain(String),

    #[error("missing-label count is not an integer: {0}")]
    HalfIntegerLabels(String),

    #[error("{context}: polynomial must be nonzero and homogeneous")]
    NonHomogeneous { context: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
