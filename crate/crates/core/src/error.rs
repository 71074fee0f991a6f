use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    #[error("constraint violated: {what} = {value:e} exceeds tolerance {tol:e}")]
    ConstraintViolation { what: &'static str, value: f64, tol: f64 },

    #[error("denominator vanishes: L1 norm {0:e} below 1e-12")]
    DegenerateDenominator(f64),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(what: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}
