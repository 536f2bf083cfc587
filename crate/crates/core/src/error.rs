use thiserror::Error;

/// Errors raised by the bundle, cone, oracle and certificate operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An integer parameter fell outside its admissible interval.
    #[error("{name} = {value} is out of range: expected {min} <= {name} <= {max}")]
    Range {
        name: &'static str,
        value: i128,
        min: i128,
        max: i128,
    },

    /// Input data violates a structural invariant.
    #[error("invalid {field}: {reason}")]
    Validation { field: String, reason: String },

    /// Input text could not be parsed at all.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn range(name: &'static str, value: usize, min: usize, max: usize) -> Self {
        Error::Range {
            name,
            value: value as i128,
            min: min as i128,
            max: max as i128,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Checks `min <= value <= max`.
pub(crate) fn check_range(name: &'static str, value: usize, min: usize, max: usize) -> Result<()> {
    if value < min || value > max {
        Err(Error::range(name, value, min, max))
    } else {
        Ok(())
    }
}
