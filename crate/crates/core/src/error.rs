use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("invalid surgery move: {0}")]
    InvalidMove(String),
    #[error("no surgery path within genus cap {cap}")]
    NotFound { cap: u32 },
    #[error("{file}:{line}: {msg}")]
    Parse { file: String, line: usize, msg: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("inconsistent input data: {0}")]
    DataInconsistency(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn parse(file: &str, line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { file: file.to_string(), line, msg: msg.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
