use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid weight {0}: weights must be positive")]
    InvalidWeight(String),

    #[error("resource limit exceeded: {what} = {value} exceeds cap {cap}")]
    ResourceLimit {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("kernel is not normalizable: constant term is zero")]
    NotNormalizable,

    #[error("insufficient truncation: {0}")]
    InsufficientTruncation(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn limit(what: &'static str, value: usize, cap: usize) -> Self {
        Error::ResourceLimit { what, value, cap }
    }
}
