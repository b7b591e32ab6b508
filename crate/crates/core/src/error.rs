use thiserror::Error;

/// Errors surfaced by the plant model, strategies, and training code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("constraint violation: {0}")]
    Constraint(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid state: {0}")]
    State(String),
    #[error("training failed: {0}")]
    Training(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
