use thiserror::Error;

/// Errors raised by constructors and operations across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan type {family}{rank}")]
    InvalidCartanType { family: char, rank: usize },

    #[error("simple root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("word {word:?} is not reduced")]
    NotReduced { word: Vec<usize> },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("torus elements live over different frames")]
    FrameMismatch,

    #[error("vectors are linearly dependent")]
    DependentVectors,

    #[error("{0:?} is not a permutation")]
    NotAPermutation(Vec<usize>),

    #[error("permutation {0:?} fails the interval test")]
    NotInXi(Vec<usize>),

    #[error("index {0} is not exchangeable")]
    NotExchangeable(usize),

    #[error("seed is not compatible: {0}")]
    Incompatible(String),

    #[error("graded reduction failed: {0}")]
    Reduction(String),

    #[error("linear system has no integer solution: {0}")]
    NoIntegerSolution(String),

    #[error("normal-form rewriting exceeded the budget of {0} steps")]
    RewriteBudget(usize),

    #[error("invalid presentation: {0}")]
    Presentation(String),

    #[error("assertion failed: {0}")]
    Assertion(String),

    #[error("zero element has no leading term")]
    ZeroElement,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
