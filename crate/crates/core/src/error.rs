//! Error type shared by all modules of the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building models or running checks.
///
/// The variants map onto the CLI exit codes: `Parse`, `Validation`,
/// `Domain`, `Config` and `Io` are usage errors, `Budget` is an
/// enumeration budget overrun.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed input text. `token` is the offending fragment.
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },

    /// A multiplication table (or similar structure) failed an axiom.
    #[error("validation failed ({axiom}): {witness}")]
    Validation { axiom: String, witness: String },

    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An enumeration hit its element budget before finishing.
    #[error("budget exceeded while {context}: visited {reached} elements of the {budget} allowed")]
    Budget {
        context: String,
        budget: u64,
        reached: u64,
    },

    /// A run configuration violates a precondition.
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error on {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }

    pub fn validation(axiom: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Validation {
            axiom: axiom.into(),
            witness: witness.into(),
        }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
