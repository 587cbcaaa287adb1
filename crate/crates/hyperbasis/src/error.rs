use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Evaluation requested exactly at a pole.
    #[error("pole: {0}")]
    Pole(String),
    /// Parameter combination hits a degenerate transformation
    /// (integer parameter difference in a connection formula).
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    /// An iterative scheme or quadrature failed to reach its tolerance.
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn pole(msg: impl Into<String>) -> Self {
        Error::Pole(msg.into())
    }
}
