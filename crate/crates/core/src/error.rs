use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("event (t={t}, x={x}) is not strictly inside a Rindler wedge")]
    Horizon { t: f64, x: f64 },

    #[error("acceleration parameter must be positive and finite, got {0}")]
    NonPositiveAcceleration(f64),

    #[error("{name} must be nonzero")]
    ZeroArgument { name: &'static str },

    #[error("Gamma function has a pole at {0}")]
    GammaPole(Complex64),

    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),

    #[error("invalid integration interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("{what}: residual {residual:e} exceeds {tolerance:e}")]
    IdentityViolation {
        what: &'static str,
        residual: f64,
        tolerance: f64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub(crate) fn nonzero(value: f64, name: &'static str) -> Result<f64> {
    if value == 0.0 || !value.is_finite() {
        Err(Error::ZeroArgument { name })
    } else {
        Ok(value)
    }
}
