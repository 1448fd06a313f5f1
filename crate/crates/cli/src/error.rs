use std::io;

use thiserror::Error;

pub const EXIT_FAIL: u8 = 2;
pub const EXIT_INCONCLUSIVE: u8 = 3;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_SOFTWARE: u8 = 70;
pub const EXIT_IO: u8 = 74;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lab(#[from] dirichlet_lab::Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        use dirichlet_lab::Error as E;
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Lab(E::InvalidArgument(_) | E::Domain(_)) => EXIT_USAGE,
            CliError::Lab(E::Overflow { .. } | E::Numeric(_)) => EXIT_SOFTWARE,
            CliError::Lab(E::PreconditionViolated(_)) => EXIT_INCONCLUSIVE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}
