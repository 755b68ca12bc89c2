use thiserror::Error;

/// Errors raised by path construction, partitioning, and the analyses built
/// on top of them.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {times} time points vs {values} values")]
    LengthMismatch { times: usize, values: usize },

    #[error("times must be strictly increasing (violation at index {0})")]
    NonMonotoneTimes(usize),

    #[error("non-finite value at index {0}")]
    NonFiniteValue(usize),

    #[error("time {t} outside path domain [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("csv parse error: {0}")]
    ParseError(String),

    #[error("missing column: {0}")]
    MissingColumn(String),

    #[error("monitor set is empty")]
    EmptyMonitorSet,

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("path must be strictly positive (violation at index {0})")]
    NonPositivePath(usize),

    #[error("too few samples: {got} < {min}")]
    TooFewSamples { got: usize, min: usize },

    #[error("weights must be positive and finite (violation at index {0})")]
    BadWeight(usize),

    #[error("requested quadratic-variation time {s} exceeds total {max}")]
    QvRangeExceeded { s: f64, max: f64 },

    #[error("ensemble is empty")]
    EmptyEnsemble,

    #[error("degenerate denominator: relative quadratic variation is zero at t = {0}")]
    DegenerateDenominator(f64),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
