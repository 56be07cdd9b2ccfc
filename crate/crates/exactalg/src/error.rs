use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a complex: composite of consecutive differentials is nonzero at entry ({0}, {1})")]
    NotAComplex(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("no integer solution to the linear system")]
    NoSolution,
}
