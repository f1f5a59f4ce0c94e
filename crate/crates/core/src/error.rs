use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("twisted form passed to an untwisted operator (twist {0})")]
    Twisted(i32),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("operator series did not terminate within {0} applications")]
    NonTerminating(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
