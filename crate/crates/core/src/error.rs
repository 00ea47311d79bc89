use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    /// A Bloch vector outside the unit ball.
    #[error("unphysical Bloch vector: |r| = {norm} exceeds 1")]
    UnphysicalState { norm: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(&'static str),

    #[error("{name} must be a probability in [0, 1], got {value}")]
    InvalidProbability { name: &'static str, value: f64 },

    #[error("prior pair ({pi1}, {pi2}) is not a probability distribution")]
    InvalidPriors { pi1: f64, pi2: f64 },

    #[error("{name} is out of range: {value}")]
    OutOfRange { name: &'static str, value: f64 },

    #[error("interaction time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("time grid must be sorted ascending")]
    UnsortedTimes,

    /// The discrimination geometry assumes states in the x-z plane.
    #[error("state has s_y = {sy}; discrimination requires states in the x-z plane")]
    OutOfPlane { sy: f64 },

    #[error("qubit count must be at least 1")]
    NoQubits,

    /// Bayes update conditioned on an outcome both hypotheses assign zero probability.
    #[error("observed outcome has zero probability under both hypotheses")]
    ImpossibleOutcome,

    #[error("exact outcome tree refused for N = {n} (cap {cap}); use the Monte Carlo estimator")]
    DepthCapExceeded { n: usize, cap: usize },

    #[error("channel is not affine on Bloch vectors (probe residual {residual:e})")]
    NonLinearChannel { residual: f64 },
}
