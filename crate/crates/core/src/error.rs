use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// [`Error::InvariantViolation`] marks states the mathematics rules out
/// (a non-free truncation cokernel, disagreeing finiteness criteria, ...);
/// everything else is an ordinary domain error caused by the input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("no solution")]
    NoSolution,
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("homology not 4-dimensional (total dimension {0})")]
    NotFourDimensional(usize),
    #[error("not a parameter ideal: {0}")]
    NotParameterIdeal(String),
    #[error("ideal is not invariant under the C3-action")]
    NotInvariant,
    #[error("degree bound {0} too small: homology did not stabilise")]
    BoundTooSmall(i64),
    #[error("degree limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::InvariantViolation(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
