use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input (non-finite entries, inconsistent shapes, bad flags).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Input is well-formed but outside the mathematical domain of the
    /// operation (not PSD, rank-deficient marginal, criterion violated, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Operand dimensions do not match.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The operation is deliberately not supported.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The conic solver failed to converge or reported infeasibility.
    #[error("solver failure: {0}")]
    Solver(String),

    /// Root bracketing failed (both endpoints on the same side).
    #[error("bracket error: {0}")]
    Bracket(String),

    /// Evaluation at a pole of the expression.
    #[error("pole error: {0}")]
    Pole(String),
}

pub type Result<T> = std::result::Result<T, Error>;
