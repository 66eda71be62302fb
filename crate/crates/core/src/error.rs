use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// A theorem hypothesis (e.g. `M` prime and coprime to `q`) does not hold.
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    /// An enumeration or scan would exceed its configured size bound.
    #[error("resource bound exceeded: {0}")]
    BoundExceeded(String),
    /// Two routes that must agree did not; indicates a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
