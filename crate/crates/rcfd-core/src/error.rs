//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by constructions, verifiers and parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("no irreducible polynomial is built in for GF({0})")]
    UnsupportedField(u64),

    #[error("enumeration of q^{rank} = {size} vectors exceeds the cap of {cap}")]
    TooLarge { rank: usize, size: u128, cap: u64 },

    #[error("strength {t} exceeds degree {k}")]
    StrengthExceedsDegree { t: usize, k: usize },

    #[error("replication m*n/q^k is not integral for (k={k}, m={m}, n={n}, q={q})")]
    NonIntegralReplication {
        k: usize,
        m: usize,
        n: usize,
        q: usize,
    },

    #[error("permutation of length {got} does not match expected length {want}")]
    BadPermutation { want: usize, got: usize },

    #[error("matrix dimensions {0}x{1} are invalid here: {2}")]
    BadDimension(usize, usize, &'static str),

    #[error("operands disagree: {0}")]
    DimensionMismatch(&'static str),

    #[error("operands have different degrees k = {0} and k = {1}")]
    DegreeMismatch(usize, usize),

    #[error("operands have different strengths t = {0} and t = {1}")]
    StrengthMismatch(usize, usize),

    #[error("Hadamard matrix is not normalized")]
    NotNormalized,

    #[error("matrix of order {0} is not Hadamard: rows are not mutually orthogonal")]
    NotHadamard(usize),

    #[error("unknown builtin name `{0}`")]
    UnknownName(String),

    #[error("the final {alpha} columns do not form a full-strength orthogonal array")]
    TailNotFullStrength { alpha: usize },

    #[error("input array failed verification: {0}")]
    OaInvalid(String),

    #[error("columns are not {t}-independent; dependent column subset {subset:?}")]
    ColumnsNotTIndependent { t: usize, subset: Vec<usize> },

    #[error("rows of the {side} block are not {t}-independent; dependent row subset {subset:?}")]
    RowsNotTIndependent {
        side: &'static str,
        t: usize,
        subset: Vec<usize>,
    },

    #[error("matrix does not have the required rank {0}")]
    RankDeficient(usize),

    #[error("parameters out of range: {0}")]
    ParametersOutOfRange(String),

    #[error("not constructible: {0}")]
    NotConstructible(String),

    #[error("quadruple partition invalid: {0}")]
    PartitionInvalid(String),

    #[error("k = {k} is too small; the rearrangement needs k >= {min}")]
    KTooSmall { k: usize, min: usize },

    #[error("array size {0} is not 4m with m odd")]
    MNotOdd(usize),

    #[error("circulant needs dimension >= 5, got {0}")]
    MTooSmall(usize),

    #[error("k = {k} is not at the degree bound 2^(M-1) = {bound}")]
    NotAtBound { k: usize, bound: usize },

    #[error("strength t = {0} is unsupported here (only t in {{2, 3}})")]
    UnsupportedStrength(usize),

    #[error("parameters are not admissible: {0}")]
    NotAdmissible(String),

    #[error("plan step {step} failed: {reason}")]
    PlanStepFailed { step: usize, reason: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
