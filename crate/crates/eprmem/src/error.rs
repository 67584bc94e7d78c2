use thiserror::Error;

/// Errors produced by the simulation core.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates its documented domain (negative rate, index out
    /// of range, inseparability outside the admissible interval, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Matrix or mode-count mismatch between two objects.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A state or transform fails a physicality invariant (covariance not
    /// symmetric, Heisenberg condition violated, non-symplectic matrix, ...).
    #[error("unphysical input: {0}")]
    Unphysical(String),

    /// A numerical routine failed to reach its target accuracy or produced
    /// a degenerate system. The message carries the offending parameters.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The feasible window of a constrained search is empty.
    #[error("empty feasible window: {0}")]
    EmptyWindow(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
