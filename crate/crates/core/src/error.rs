use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input is valid mathematically but outside what this implementation
    /// supports (series regime guards, degree caps, ...).
    #[error("capability error: {0}")]
    Capability(String),

    /// The result cannot be represented in double precision.
    #[error("range error: {0}")]
    Range(String),

    /// Quadrature refinement failed to converge; the best estimate so far
    /// is attached.
    #[error("accuracy error: {message} (best estimate {best_estimate:e})")]
    Accuracy { message: String, best_estimate: f64 },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }
    pub fn range(msg: impl Into<String>) -> Self {
        Error::Range(msg.into())
    }
}
