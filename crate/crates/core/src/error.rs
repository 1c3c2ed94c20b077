use thiserror::Error;

/// Failure modes shared by every operation in the crate.
///
/// The three variants map onto distinct exit codes in the command-line tool:
/// malformed input, a violated precondition of an otherwise well-formed
/// request, and inputs that are well-formed but have the wrong algebraic
/// shape for the requested construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("structural error: {0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Precondition(_) => "precondition",
            Error::Structural(_) => "structural",
        }
    }
}
