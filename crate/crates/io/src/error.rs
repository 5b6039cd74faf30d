use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Semantic(#[from] esgame_core::Error),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl DocError {
    #[must_use]
    pub fn is_guard(&self) -> bool {
        matches!(self, DocError::Semantic(e) if e.is_guard())
    }
}

pub type DocResult<T> = Result<T, DocError>;
