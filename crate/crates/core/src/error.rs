use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("code has {0} word(s); at least 2 are needed for a minimum distance")]
    TooFewWords(usize),

    #[error("{what}: would enumerate about 2^{log2_size:.1} words, cap is 2^{cap_log2:.1}{hint}")]
    CapExceeded {
        what: &'static str,
        log2_size: f64,
        cap_log2: f64,
        hint: &'static str,
    },

    #[error("{what}: needs {needed} operations, budget is {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("{0} requires linear codes")]
    NotLinear(&'static str),

    #[error("codes are not nested: level {level} is not contained in level {next}")]
    NotNested { level: usize, next: usize },

    #[error("invalid level layout: {0}")]
    Levels(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalog(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
