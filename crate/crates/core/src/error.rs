use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("variable {0} has no value at the evaluation point")]
    MissingVariable(&'static str),
    #[error("parameter coincides with a chain point: {0}")]
    PoleDetected(String),
    #[error("grid of {points} points exceeds budget {budget}")]
    GridTooLarge { points: u128, budget: u128 },
    #[error("grid evaluation found no usable points")]
    GridDegenerate,
    #[error("series truncation orders differ: {0:?} vs {1:?}")]
    OrderMismatch((usize, usize), (usize, usize)),
    #[error("geometric ratio has no positive order")]
    NonpositiveOrder,
    #[error("series expansion does not converge: {0}")]
    NonconvergentSpec(String),
    #[error("summation did not stabilize within cutoff {0}")]
    StabilizationFailure(usize),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("word {0} is not admissible")]
    NotAdmissible(String),
    #[error("word {0} is not of the form y...x")]
    NotInH0(String),
    #[error("zero parameter cannot be inverted")]
    ZeroParameter,
    #[error("numerical instability: {0}")]
    NumericalInstability(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
