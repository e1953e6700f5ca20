use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error("weight {0} is not dominant")]
    NonDominant(String),
    #[error("rank {0} too large")]
    RankTooLarge(usize),
    #[error("parity mismatch: {0}")]
    Parity(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not in block form: {0}")]
    NotBlockForm(String),
    #[error("odd coefficient: {0}")]
    OddCoefficient(String),
    #[error("{0}")]
    Computation(String),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
