use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid automaton: {0}")]
    Invalid(String),

    #[error("alphabets differ: [{left}] vs [{right}]")]
    AlphabetMismatch { left: String, right: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("{what} exceeds budget of {limit}")]
    Budget { what: &'static str, limit: usize },

    #[error("automaton is not minimal")]
    NotMinimal,

    #[error("language is trivial (empty or universal)")]
    TrivialLanguage,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("empty part in tuple encoding at index {0}")]
    EmptyPart(usize),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
