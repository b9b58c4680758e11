use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configured size limit would be exceeded.
    #[error("capacity exceeded: {what} is {requested}, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    /// The numeric evaluator could not certify the requested tolerance.
    #[error("accuracy error for {target}: error bound {bound:e} exceeds tolerance {tolerance:e}")]
    Accuracy {
        target: String,
        bound: f64,
        tolerance: f64,
    },

    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
