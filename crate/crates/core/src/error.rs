use thiserror::Error;

/// Failures raised by the closed-form routines and the Fock-space oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("cutoff error: {0}")]
    Cutoff(String),

    #[error("no convergence: {0}")]
    Convergence(String),

    #[error("negative eigenvalue {value:e} below threshold -{threshold:e}")]
    NegativeEigenvalue { value: f64, threshold: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

/// Returns `Overflow` when `x` is not finite.
pub(crate) fn finite(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Overflow(format!("{what} is not representable")))
    }
}
