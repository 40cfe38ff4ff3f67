use thiserror::Error;

/// Errors raised by the library. Verification failures are not errors; they
/// land in reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Lie type: {0}")]
    InvalidType(String),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("Weyl group of {ty} has order {order}, above the cap {cap}")]
    WeylCap { ty: String, order: u128, cap: usize },
    #[error("more than {0} reduced words")]
    WordCap(usize),
    #[error("not a reduced word of w0: {0:?}")]
    NotReducedWord(Vec<usize>),
    #[error("{0} is not dominant integral")]
    NotDominant(String),
    #[error("invalid case: {0}")]
    InvalidCase(String),
    #[error("{0} does not lie in (1/p)Q*")]
    NotInLattice(String),
    #[error("invalid lambda: {0}")]
    InvalidLambda(String),
    #[error("{0} is not a weight of this module")]
    NotAWeight(String),
    #[error("exponent grid {0} exceeds the bound {1}")]
    GridBound(u64, u64),
    #[error("non-integral coefficient {0}")]
    NonIntegral(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("size limit: {0}")]
    SizeLimit(String),
    #[error("translation {0} outside the translation lattice")]
    NotInTranslationLattice(String),
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
