use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at row {row}, column {col}: {msg}")]
    Parse { row: usize, col: usize, msg: String },

    #[error("parse error: {0}")]
    Format(String),

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("at least {required} samples required, got {got}")]
    InsufficientSamples { required: usize, got: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("spectrum has no positive eigenvalue")]
    DegenerateSpectrum,

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("cumulant order {0} exceeds the supported maximum of 4")]
    OrderTooHigh(usize),

    #[error("dataset is not standardized")]
    NotStandardized,

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("{n} points exceed the Rips point cap of {cap}")]
    TooManyPoints { n: usize, cap: usize },

    #[error("{0} qubits exceed the simulator cap of 14")]
    TooManyQubits(usize),

    #[error("arity mismatch: {0}")]
    Arity(String),

    #[error("cannot encode an all-zero vector")]
    ZeroVector,

    #[error("feature map capacity exceeded: {features} features requires {required} qubits, map has {available}")]
    Capacity {
        features: usize,
        required: usize,
        available: usize,
    },

    #[error("invalid subsystem: {0}")]
    InvalidSubset(String),

    #[error("invalid quantum state: {0}")]
    InvalidState(String),

    #[error("ensemble error: {0}")]
    Ensemble(String),

    #[error("missing metric: {0}")]
    MissingMetric(String),

    #[error("all scores in the collection are zero")]
    DegenerateCollection,

    #[error("fit error: {0}")]
    Fit(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
