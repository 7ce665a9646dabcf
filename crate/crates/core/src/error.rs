use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("well-definedness violation: {0}")]
    IllDefinedMap(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid Frobenius action: {0}")]
    InvalidAction(String),
    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    InvalidConfig(Vec<String>),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("chain map does not commute with boundaries in dimension {0}")]
    NotAChainMap(usize),
    #[error("not SNC after extension: {0}")]
    NotSncAfterExtension(String),
    #[error("invalid fundamental group data: {0}")]
    InvalidPi1(String),
    #[error("labels do not descend to H1: {0}")]
    CocycleViolation(String),
    #[error("edge labels are not Frobenius-equivariant: {0}")]
    LabelEquivariance(String),
    #[error("invalid edge label: {0}")]
    InvalidLabel(String),
    #[error("complex too large for the oracle: {0} simplices (limit {1})")]
    TooLarge(usize, usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
}
