use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("partition universes differ ({0} vs {1})")]
    UniverseMismatch(usize, usize),
    #[error("element {0} forms a singleton block and cannot be projected away")]
    IsolatedBlock(usize),
    #[error("instance too large for brute force: n = {n}, guard = {guard}")]
    GuardExceeded { n: usize, guard: usize },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
