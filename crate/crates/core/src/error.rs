//! Error taxonomy shared by every module.
//!
//! The split mirrors how callers must react: `InvalidInput`, `Parse`, and
//! `InsufficientData` are problems with what the user handed us (the CLI maps
//! them to exit status 2); `Numerical` means the inputs were admissible but an
//! iterative routine failed (exit status 3).

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A value violates a documented precondition or type invariant.
    #[error("invalid {field}: {reason}")]
    InvalidInput {
        /// Name of the offending field or argument.
        field: &'static str,
        /// What was wrong with it.
        reason: String,
    },

    /// Malformed structured input (CSV/JSON), with a 1-based line number.
    #[error("{context}: line {line}: {reason}")]
    Parse {
        context: &'static str,
        line: usize,
        reason: String,
    },

    /// Not enough observations for the requested computation.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// An admissible computation failed numerically (divergence, overflow,
    /// no bracketed root, ...).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// Shorthand for [`Error::InvalidInput`].
    pub fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            field,
            reason: reason.into(),
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// A value together with any non-fatal diagnostics raised while computing it.
///
/// Used where the contract is "warn, don't fail" (short historical-VaR
/// samples, betas outside the conventional [0, 2] band, ...). Warnings are
/// plain strings so the CLI can forward them into reports verbatim.
#[derive(Debug, Clone, PartialEq)]
pub struct Warned<T> {
    pub value: T,
    pub warnings: Vec<String>,
}

impl<T> Warned<T> {
    pub fn clean(value: T) -> Self {
        Warned {
            value,
            warnings: Vec::new(),
        }
    }

    pub fn new(value: T, warnings: Vec<String>) -> Self {
        Warned { value, warnings }
    }
}
