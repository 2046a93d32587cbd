use thiserror::Error;

/// Errors raised by library operations.
///
/// `Input` covers malformed or out-of-contract arguments; `Invariant` signals an internal
/// consistency check that failed and should be reported as a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn is_input(&self) -> bool {
        matches!(self, Error::Input(_) | Error::Unsupported(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure_input {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err($crate::error::Error::Input(format!($($arg)*)));
        }
    };
}
pub(crate) use ensure_input;
