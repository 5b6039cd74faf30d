use std::fmt;

use crate::es::ValidationReport;

/// Library error.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unknown event `{0}`")]
    UnknownEvent(String),
    #[error("invalid event id `{0}`")]
    InvalidId(String),
    #[error("invalid event structure: {0}")]
    Invalid(ValidationReport),
    #[error("not a map: {0}")]
    NotAMap(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("guard exceeded: {what} is {actual}, limit {limit}")]
    Guard {
        what: GuardKind,
        actual: usize,
        limit: usize,
    },
}

/// Which enumeration ceiling was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuardKind {
    Events,
    Configurations,
    Pairs,
}

impl fmt::Display for GuardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GuardKind::Events => "event count",
            GuardKind::Configurations => "configuration count",
            GuardKind::Pairs => "synchronised pair count",
        })
    }
}

impl Error {
    #[must_use]
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
