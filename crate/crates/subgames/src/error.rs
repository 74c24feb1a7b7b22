use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid subtraction set: {0}")]
    InvalidSet(String),

    #[error("index {index} out of range (max {max})")]
    OutOfRange { index: u64, max: u64 },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("root solver did not converge: {0}")]
    NonConvergence(String),

    #[error("exact identity check failed: {0}")]
    IdentityCheck(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
