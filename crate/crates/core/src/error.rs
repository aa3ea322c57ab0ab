use thiserror::Error;

#[derive(Debug, Error)]
pub enum MuhError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square: row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("mixed exact and numeric representations")]
    MixedRepresentation,
    #[error("operation requires the exact root-of-unity representation")]
    ExactRequired,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("parameter is not unimodular (|z| = {0})")]
    NotUnimodular(f64),
    #[error("system is incomplete: {matrices} matrices in dimension {dim}")]
    Incomplete { matrices: usize, dim: usize },
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("interchange format: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, MuhError>;
