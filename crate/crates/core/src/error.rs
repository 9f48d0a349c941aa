use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Schema(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("divergent: {0}")]
    Divergent(String),
    #[error("unknown identity '{0}'")]
    UnknownId(String),
    #[error("precision not reached: {0}")]
    Precision(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Schema(_) | Error::UnknownId(_) => 2,
            Error::Domain(_) | Error::Divergent(_) => 3,
            Error::Precision(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
