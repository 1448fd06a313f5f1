use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integer overflow in {context} at n = {n}")]
    Overflow { context: String, n: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn overflow(context: impl Into<String>, n: u64) -> Self {
        Error::Overflow {
            context: context.into(),
            n,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
