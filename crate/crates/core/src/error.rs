use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not skew-symmetric at ({row}, {col})")]
    NotSkewSymmetric { row: usize, col: usize },

    #[error("matrix must have even dimension, got {0}")]
    OddDimension(usize),

    #[error("rank {p} is not twice the half-rank {g}")]
    HalfRankMismatch { p: usize, g: usize },

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("invalid surface: {0}")]
    InvalidSurface(String),

    #[error("level q = {q} out of range (allowed {allowed})")]
    LevelOutOfRange { q: i64, allowed: String },

    #[error("invalid cover data: {0}")]
    InvalidCover(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid radial problem: {0}")]
    InvalidProblem(String),

    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
}
