use alloc::string::String;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("budget exceeded: {what} = {requested} is above the limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: u64,
        limit: u64,
    },
    #[error("series reciprocal needs a nonzero constant term")]
    ZeroConstantTerm,
    #[error("series reciprocal needs a unit constant term (±1), found {0}")]
    NonUnitConstantTerm(String),
    #[error("coefficient index n = {n} exceeds truncation order {order}")]
    BeyondTruncation { n: usize, order: usize },
    #[error("table covers n <= {n_max}, but n = {requested} was needed")]
    InsufficientCoverage { n_max: usize, requested: usize },
    #[error("element is outside the domain: {0}")]
    OutsideDomain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = core::result::Result<T, Error>;
