use thiserror::Error;

#[derive(Debug, Error)]
pub enum CosimpError {
    #[error("truncation level {have} too small, need at least {need}")]
    TruncationTooSmall { have: usize, need: usize },
    #[error("cohomology window {want} exceeds truncation {have}")]
    WindowExceedsTruncation { want: usize, have: usize },
    #[error("cosimplicial identity violated: {0}")]
    IdentityViolated(String),
    #[error("level {0} is not free; the symmetric square needs free levels")]
    NotFree(usize),
    #[error("concentration hypothesis failed: mod-2 cohomology dims in window are {0:?}")]
    HypothesisFailed(Vec<usize>),
}
