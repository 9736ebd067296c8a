//! Error taxonomy shared by every module.
//!
//! Two kinds of failure matter to callers: structurally malformed input
//! (wrong lengths, empty data, bad index bases) and mathematically invalid
//! input (a nonpositive weight, a Cesàro order at or below -1). A third
//! variant covers the rare case where two algebraically equivalent
//! computations disagree beyond tolerance, which indicates a numerical
//! problem rather than a caller mistake.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Structurally invalid input: lengths, emptiness, index bases, ranges.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Mathematically out-of-domain input; the message names the offending
    /// value or index.
    #[error("domain error: {0}")]
    Domain(String),

    /// Two equivalent formulas disagreed beyond the stated tolerance.
    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),

    /// Malformed configuration (unknown generator keys, bad parameters, ...).
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
