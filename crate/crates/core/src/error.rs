use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown system id `{0}`")]
    UnknownSystem(String),
    #[error("unknown factor map id `{0}`")]
    UnknownFactorMap(String),
    #[error("points belong to different systems (`{left}` vs `{right}`)")]
    CrossSystem { left: String, right: String },
    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),
    #[error("invalid window: lo = {lo} > hi = {hi}")]
    InvalidWindow { lo: i64, hi: i64 },
    #[error("tolerances must satisfy 0 < zero_tol < sep_tol (got {zero_tol}, {sep_tol})")]
    InvalidTolerances { zero_tol: f64, sep_tol: f64 },
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("the fibre sampler produced no pairs")]
    EmptySample,
    #[error("sampled pair {index} is not in R(pi)")]
    NotInFibre { index: usize },
    #[error("pair sequence {index} has no declared limit")]
    MissingLimit { index: usize },
    #[error("pair sequence {index} is empty")]
    EmptySequence { index: usize },
    #[error("function families are truncated differently ({left} vs {right})")]
    TruncationMismatch { left: usize, right: usize },
    #[error("truncation must be at least 1")]
    ZeroTruncation,
    #[error("composition mismatch at sampled point {index}")]
    CompositionMismatch { index: usize },
    #[error("cannot parse `{input}` as a {system} point: {reason}")]
    ParsePoint { system: String, input: String, reason: String },
    #[error("factor map `{0}` has no registered decomposition")]
    NoDecomposition(String),
    #[error("word length {0} exceeds the enumeration limit of 24")]
    LengthTooLarge(usize),
}
