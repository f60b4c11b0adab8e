use thiserror::Error;

/// Errors surfaced by the engines and the scenario harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("QL iteration did not converge for eigenvalue index {index} within {budget} sweeps")]
    ConvergenceFailure { index: usize, budget: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("quantum number n = {n} outside [-N/2, N/2] = [{}, {}]", -half_n, half_n)]
    OutOfRange { n: f64, half_n: f64 },

    #[error("no revival structure at u = 0 (revival time is infinite)")]
    ZeroCoupling,

    #[error("tilted revival shift is degenerate: 1 - (3/4) u sin(2 alpha) = {denominator} <= 0")]
    DegenerateShift { denominator: f64 },

    #[error("envelope never decays below half its initial value; cannot fit a collapse time")]
    InsufficientDecay,

    #[error("no local envelope maximum in the search window for revival m = {m}")]
    PeakNotFound { m: u32 },

    #[error("invalid scenario: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
