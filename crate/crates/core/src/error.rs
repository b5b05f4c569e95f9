use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("order {order} exceeds the limit {limit} for {what}")]
    TooLarge {
        what: &'static str,
        order: usize,
        limit: usize,
    },

    #[error("index out of bounds: {0}")]
    Bounds(String),

    #[error("malformed multi-index: {0}")]
    MultiIndex(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("interpolation grid of {points} points exceeds the limit {limit}")]
    GridOverflow { points: u128, limit: u128 },

    #[error("entry ({row}, {col}) is not a Gaussian integer")]
    NonInteger { row: usize, col: usize },

    #[error("singular value decomposition did not converge after {sweeps} sweeps (residual {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("thread pool configuration failed: {0}")]
    Threads(String),
}

pub type Result<T> = std::result::Result<T, Error>;
