use muh_core::MuhError;
use thiserror::Error;

use crate::certificate::LpCertificate;

#[derive(Debug, Error)]
pub enum LpError {
    #[error("radius {radius} window does not contain {vector:?}")]
    WindowTooSmall { radius: i64, vector: Vec<i64> },
    #[error("invalid problem: {0}")]
    Invalid(String),
    #[error("problem is infeasible")]
    Infeasible(Box<LpCertificate>),
    #[error("problem is unbounded")]
    Unbounded,
    #[error("backend solver: {0}")]
    Backend(String),
    #[error("exact solve: {0}")]
    Exact(String),
    #[error(transparent)]
    Core(#[from] MuhError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, LpError>;
