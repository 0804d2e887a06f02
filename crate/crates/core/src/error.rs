use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),

    #[error("constant defining tuples are excluded")]
    ConstantTuple,

    #[error("defining tuple over F_{p} must have {expected} entries, got {got}")]
    TupleLength { p: u32, expected: usize, got: usize },

    #[error("parse error at position {position} ('{token}'): {message}")]
    Parse {
        position: usize,
        token: String,
        message: String,
    },

    #[error("{0}")]
    Usage(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A proven statement failed to hold. Never a valid state; it signals a bug.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("{value} is not a power of {p}")]
    NotPrimePower { value: String, p: u32 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(position: usize, token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            token: token.into(),
            message: message.into(),
        }
    }
}
