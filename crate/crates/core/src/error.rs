use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("strand count must be at least {min}, got {got}")]
    TooFewStrands { min: usize, got: usize },

    #[error("letter {letter} out of range for {n} strands (expected 1 <= |k| <= {})", n - 1)]
    LetterOutOfRange { letter: i64, n: usize },

    #[error("malformed braid token `{0}`")]
    MalformedToken(String),

    #[error("strand count mismatch: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("braid is not pure (induced permutation {0})")]
    NotPure(String),

    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("closure exceeded the bound of {0} elements")]
    ClosureBoundExceeded(usize),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),

    #[error("annulus index {index} out of range for rank {rank}")]
    AnnulusOutOfRange { index: usize, rank: usize },

    #[error("unknown report format `{0}`")]
    UnknownFormat(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid subgroup spec: {0}")]
    InvalidSpec(String),

    #[error("declared structure contradicted: {0}")]
    StructureContradicted(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
