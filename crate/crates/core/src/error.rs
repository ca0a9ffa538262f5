use thiserror::Error;

/// Errors raised by curve construction, the flow solvers and the analyses.
#[derive(Debug, Error)]
pub enum FlowError {
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { got: usize, min: usize },

    #[error("non-finite value at sample {0}")]
    NonFinite(usize),

    #[error("degenerate edge {index}: length {length:e} below {threshold:e}")]
    DegenerateEdge {
        index: usize,
        length: f64,
        threshold: f64,
    },

    #[error("non-positive curvature {value:e} at sample {index}")]
    NonPositiveCurvature { index: usize, value: f64 },

    #[error("profile does not close: residual ({cx:e}, {cy:e}) exceeds tolerance {tol:e}")]
    NotClosed { cx: f64, cy: f64, tol: f64 },

    #[error("curve is not convex (min curvature {k_min:e})")]
    NotConvex { k_min: f64 },

    #[error("enclosed area {0:e} is not positive")]
    NonPositiveArea(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("step failed after {halvings} halvings: {reason}")]
    StepFailure { halvings: u32, reason: String },

    #[error("unavailable: {0}")]
    Unavailable(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("singular linear system")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FlowError>;

pub(crate) fn invalid(msg: impl Into<String>) -> FlowError {
    FlowError::InvalidParameter(msg.into())
}
