use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid ambient ({alpha},{beta}): both alphabet sizes must be at least 1")]
    InvalidAmbient { alpha: usize, beta: usize },

    #[error("letter {letter} is outside the ambient ({alpha},{beta})")]
    LetterOutOfRange { letter: String, alpha: usize, beta: usize },

    #[error("malformed quad: {0}")]
    MalformedQuad(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("line {line}: {msg}")]
    ParseAt { line: usize, msg: String },

    #[error("square {square} does not belong to GS(1,{beta})")]
    AmbientMismatch { square: String, beta: usize },

    #[error("corrupt relation: {0}")]
    Corrupt(String),

    #[error("resource budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("psi images are not disjoint: expected {expected} relations, found {found}")]
    DisjointnessViolation { expected: u64, found: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BudgetExceeded(_) => 3,
            Error::Corrupt(_) | Error::DisjointnessViolation { .. } => 1,
            _ => 2,
        }
    }

    pub(crate) fn at_line(self, line: usize) -> Error {
        match self {
            Error::ParseAt { .. } => self,
            other => Error::ParseAt { line, msg: other.to_string() },
        }
    }
}
