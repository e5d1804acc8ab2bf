use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {reason}")]
    InvalidPermutation { reason: String },

    #[error("invalid transposition ({a} {b}): points must be distinct and >= 1")]
    InvalidTransposition { a: usize, b: usize },

    #[error("invalid cycle type: {reason}")]
    InvalidCycleType { reason: String },

    #[error("invalid walk: {reason}")]
    InvalidWalk { reason: String },

    #[error("size guard exceeded: {what} = {value} is above the limit {limit}")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("step index {index} out of range 1..={max}")]
    StepIndexOutOfRange { index: usize, max: usize },

    #[error("negative step count 2g-2+l(alpha)+l(beta) = {value}")]
    NegativeStepCount { value: i64 },

    #[error("evaluation requires N >= d, got N = {n} for degree {degree}")]
    EvaluationBelowDegree { n: u64, degree: usize },

    #[error("insufficient data: {reason}")]
    InsufficientData { reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
