use thiserror::Error;

/// Syntax error at a 0-based byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError { offset, message: message.into() }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] iwahori_core::Error),
    #[error("invalid root datum: {0}")]
    Datum(String),
    #[error("{0}")]
    Semantic(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// 2 parse, 3 datum, 4 semantic, 5 budget.
    pub fn exit_code(&self) -> i32 {
        use iwahori_core::Error as E;
        match self {
            CliError::Parse(_) => 2,
            CliError::Datum(_) | CliError::Core(E::InvalidDatum(_)) => 3,
            CliError::Core(E::SearchBudgetExceeded(_)) => 5,
            _ => 4,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
