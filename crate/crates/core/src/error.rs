use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("pattern syntax error at column {column}: {message}")]
    PatternSyntax { column: usize, message: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is not a 0-1 matrix")]
    NotZeroOne,

    #[error("matrix has a nonzero diagonal entry at position {0}")]
    NonZeroDiagonal(usize),

    #[error("matrix is singular")]
    Singular,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("order {n} is outside the supported range {min}..={max}")]
    OrderOutOfRange { n: usize, min: usize, max: usize },

    #[error("checkpoint rejected: {0}")]
    Checkpoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
