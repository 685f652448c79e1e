use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("number of times {n} outside supported range {min}..={max}")]
    TimesOutOfRange { n: usize, min: usize, max: usize },

    #[error("dimension mismatch: expected {expected} times, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("time index {index} outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("subset must be non-empty")]
    EmptySubset,

    #[error("duplicate time index {0}")]
    DuplicateIndex(usize),

    #[error("coefficient for {key} is {value}, outside [-1, 1]")]
    CoefficientOutOfRange { key: String, value: f64 },

    #[error("non-finite value for {0}")]
    NonFinite(String),

    #[error("distribution sums to {sum}, not 1")]
    NotNormalized { sum: f64 },

    #[error("distribution has {found} entries, expected {expected}")]
    WrongLength { expected: usize, found: usize },

    #[error("correlator C_{i}{j} missing from data")]
    MissingCorrelator { i: usize, j: usize },

    #[error("key set does not match the chain or complete pair pattern for n = {n}")]
    UnknownPattern { n: usize },

    #[error("malformed key {0:?}")]
    MalformedKey(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("pairwise marginals are incompatible: {0}")]
    IncompatibleMarginals(String),

    #[error("input is not symmetric: moment {0} is odd-order and non-zero")]
    NonSymmetric(String),

    #[error("linear feasibility oracle did not converge after {iterations} pivots")]
    OracleNonConvergence { iterations: usize },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
