use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity k = {0} is not supported")]
    UnsupportedArity(usize),
    #[error("kernel {kernel:?} cannot be used with arity k = {k}")]
    KernelArityMismatch { kernel: crate::Kernel, k: usize },
    #[error("minimum run length must be at least 1")]
    ZeroMinRunLen,
    #[error("malformed run bounds: {0}")]
    MalformedBounds(String),
    #[error("merge region {0} is empty")]
    EmptyRegion(usize),
    #[error("merge buffer holds {capacity} elements but {needed} are required")]
    BufferTooSmall { needed: usize, capacity: usize },
    #[error("input contains the reserved sentinel value")]
    SentinelInInput,
    #[error("inadmissible power sequence: {0}")]
    InadmissiblePowers(&'static str),
    #[error("run profile must be nonempty with positive lengths")]
    InvalidProfile,
    #[error("run profile with {0} runs exceeds the exhaustive optimum limit of {max}", max = crate::oracle::MAX_OPTIMAL_RUNS)]
    ProfileTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
