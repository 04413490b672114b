use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested tolerance needs a half-width beyond [`crate::MAX_HALF_WIDTH`].
    #[error("truncation limit reached: best achievable tail is {achievable:e}")]
    Truncation { achievable: f64 },

    #[error("tolerance {requested:e} unachievable: tail bound is {achievable:e}")]
    ToleranceUnachievable { requested: f64, achievable: f64 },

    /// The sample tail cannot be controlled, so the series does not determine `f`.
    #[error("reconstruction unsound: {0}")]
    ReconstructionUnsound(String),

    #[error("quadrature error estimate {estimate:e} exceeds tolerance {tol:e}")]
    Quadrature { estimate: f64, tol: f64 },

    #[error("missing derivative handle: {0}")]
    MissingDerivative(String),

    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn check_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite, got {x}")))
    }
}
