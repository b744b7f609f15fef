use alloc::string::String;

/// Errors raised by the enumeration engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A precondition on a structured argument was violated (e.g. a set
    /// that is not an order ideal was passed where one is required).
    #[error("contract violation: {0}")]
    Contract(String),
    /// A configured budget would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A linear system had no unique solution.
    #[error("singular system: zero pivot in row {row}")]
    Singular { row: usize },
    /// An internal consistency check failed.
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;
