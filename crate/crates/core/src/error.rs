use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(String, String),
    #[error("coefficient domain mismatch")]
    DomainMismatch,
    #[error("zero element has no filtration degree")]
    ZeroElement,
    #[error("constant term of series is not 1")]
    ConstantTerm,
    #[error("series is not group-like")]
    NotGroupLike,
    #[error("word polynomial is not a Lie element")]
    NotLie,
    #[error("weight m = {0} is not allowed here")]
    BadWeight(u32),
    #[error("p = {p} divides the level N = {n}")]
    PrimeDividesLevel { p: u64, n: u64 },
    #[error("root k={k} (N={n}) is not a primitive upper-half basis root")]
    NotBasisRoot { k: u64, n: u64 },
    #[error("divergent input: {0}")]
    Divergent(String),
    #[error("non-integrable interior singularity at {0}")]
    InteriorSingularity(String),
    #[error("endpoint is singular for the word but regularization is not enabled")]
    MissingRegularization,
    #[error("rational reconstruction failed for {0}")]
    Reconstruction(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}
