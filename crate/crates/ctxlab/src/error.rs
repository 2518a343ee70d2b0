//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CtxError {
    #[error("unsupported matrix dimension {0} (expected 2, 4, 8, or 16)")]
    BadDimension(usize),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("operator is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("operator is not a +/-1 observable: O^2 deviates from I by {0:.3e}")]
    NotInvolution(f64),

    #[error("bad qubit list {0:?}: indices must be strictly increasing, 1-based, at most 4")]
    BadQubits(Vec<usize>),

    #[error("unknown observable label {0:?}")]
    UnknownLabel(String),

    #[error("observables {0} and {1} do not commute, so they share no context")]
    NonCommutingContext(String, String),

    #[error("distant setting {0} is not defined in this scenario")]
    MissingDistant(String),

    #[error("invalid state: {0}")]
    BadState(String),

    #[error("parameter {name} = {value} outside {range}")]
    BadParameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("outcome probability {0:.3e} is negative beyond tolerance")]
    NegativeProbability(f64),

    #[error("outcome probabilities sum to {0} (expected 1 within 1e-10)")]
    Unnormalized(f64),

    #[error("invalid behavior table: {0}")]
    BadTable(String),

    #[error("no crossing of the target inside [{lo}, {hi}]")]
    NoCrossing { lo: f64, hi: f64 },

    #[error("invalid request: {0}")]
    BadRequest(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("config error: {0}")]
    Config(String),
}

impl CtxError {
    /// True for errors caused by how the tool was invoked, as opposed to
    /// internal or IO failures. The CLI maps these to exit code 2.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            CtxError::UnknownLabel(_)
                | CtxError::BadParameter { .. }
                | CtxError::BadRequest(_)
                | CtxError::NoCrossing { .. }
                | CtxError::Config(_)
        )
    }
}

pub type Result<T, E = CtxError> = std::result::Result<T, E>;
