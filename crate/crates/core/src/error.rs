use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arguments outside the documented domain of an operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// The request would exceed a size guard (subset counts, matrix sizes, prime counts).
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    /// Two independent computations of the same quantity disagreed.
    #[error("internal fault: {0}")]
    InternalFault(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::InvalidInput(format!($($arg)*))
    };
}
pub(crate) use invalid;
