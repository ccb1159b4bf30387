//! Error type shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong across evaluation, parsing, reporting and
/// rendering.
#[derive(Debug, Error)]
pub enum Error {
    /// An event time was negative, NaN or infinite.
    #[error("invalid time at index {index}: {value} ({reason})")]
    InvalidTime {
        index: usize,
        value: f64,
        reason: &'static str,
    },

    /// Tolerance windows violate `0 < inner <= outer` or are non-finite.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// Instance exceeds the guard for the exhaustive search.
    #[error("instance too large for exhaustive search: {events} events exceed the limit of {limit}")]
    TooLarge { events: usize, limit: usize },

    /// A ledger operation references a detection time that is not present
    /// (or no longer present) in the sequence being transformed.
    #[error("inconsistent ledger: {0}")]
    InconsistentLedger(String),

    /// Malformed beat file content; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// `write_report` was called with no results and without the
    /// empty-corpus flag.
    #[error("refusing to write a report for zero pairs (pass allow_empty to emit a header-only document)")]
    EmptyReport,

    /// Figure dimensions or time range are unusable.
    #[error("invalid viz spec: {0}")]
    InvalidSpec(String),

    /// Filesystem error while reading beat files or directories.
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
