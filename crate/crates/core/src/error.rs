use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid statistics: {0}")]
    InvalidStatistics(String),

    #[error("{name} must lie strictly inside (0, 1), got {value}")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },

    #[error("weight vector has no positive entry")]
    ZeroWeights,

    #[error("weight vector contains a negative or non-finite entry at index {index}")]
    InvalidWeight { index: usize },

    #[error("no PU signal reaches the fusion centre (theta or SNR is zero everywhere)")]
    NoSignal,

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid GA configuration: {0}")]
    InvalidConfig(String),
}
