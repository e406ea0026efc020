use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input; `field` names the offending parameter.
    #[error("invalid {field}: {msg}")]
    Validation { field: String, msg: String },

    /// An exhaustive enumeration would exceed the configured budget.
    #[error("enumeration budget exceeded: {what} needs {needed} points, budget is {budget}")]
    Budget {
        what: String,
        needed: String,
        budget: u64,
    },

    /// Arithmetic outside the domain of an operation (poles, division by zero).
    #[error("domain error: {0}")]
    Domain(String),

    /// Two independent computations that must agree did not.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn validation(field: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            msg: msg.into(),
        }
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
