use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Text or JSON input that could not be parsed. `pos` is a byte offset
    /// into the source string.
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("exponent overflow (exponents are limited to u32)")]
    ExponentOverflow,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A condition the underlying theory rules out, such as a singular
    /// Fischer matrix on a valid ellipsoid. Reaching this is a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
