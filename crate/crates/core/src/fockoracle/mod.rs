//! Brute-force verification engine on a truncated Fock basis.
//!
//! Density matrices are built as `S diag(p) S^dag` with `S` the matrix
//! exponential of the truncated squeeze generator, and every quantity is then
//! computed with dense linear algebra. Nothing here uses the Gaussian closed
//! forms, so agreement with [`crate::closedform`] is a real check.
//!
//! Memory per call is `O(D^2)` complex entries: about `16 D^2` bytes per
//! matrix, with a handful of matrices live at once.

mod density;
mod fidelity;
mod linalg;

use serde::Serialize;

use crate::error::{domain, Result};

pub use density::{
    density_matrix, squeeze_generator, squeeze_operator, thermal_cutoff, thermal_probs,
    DensityMatrix, ThermalProbs, MAX_ORACLE_R,
};
pub use fidelity::{
    fidelity_at_cutoff, fidelity_trace_oracle, metric_cutoff, metric_eigenbasis, OracleFidelity,
};
pub use linalg::{
    hermitian_eig, hermiticity_defect, matrix_exponential, sqrt_psd, CMatrix, HermitianEig,
};

/// Environment variable overriding [`OracleConfig::max_cutoff`].
pub const MAX_CUTOFF_ENV: &str = "BURESGEO_MAX_CUTOFF";

/// Thermal tail mass tolerated when choosing a starting cutoff.
pub const THERMAL_TAIL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    pub initial_cutoff: usize,
    pub max_cutoff: usize,
    /// Convergence threshold between successive cutoff doublings.
    pub fidelity_tol: f64,
    pub eig_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            initial_cutoff: 32,
            max_cutoff: 1024,
            fidelity_tol: 1e-8,
            eig_tol: 1e-11,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.initial_cutoff < 8 {
            return domain("initial_cutoff must be at least 8");
        }
        if self.max_cutoff < 2 * self.initial_cutoff {
            return domain("max_cutoff must be at least twice initial_cutoff");
        }
        if !(self.fidelity_tol > 0.0) || !(self.eig_tol > 0.0) {
            return domain("oracle tolerances must be positive");
        }
        Ok(())
    }

    /// Default config with `max_cutoff` taken from `BURESGEO_MAX_CUTOFF` when set.
    pub fn from_env() -> Result<Self> {
        OracleConfig::default().with_env()
    }

    /// `self` with `max_cutoff` taken from `BURESGEO_MAX_CUTOFF` when set.
    pub fn with_env(self) -> Result<Self> {
        let mut cfg = self;
        if let Ok(v) = std::env::var(MAX_CUTOFF_ENV) {
            cfg.max_cutoff = v.trim().parse().map_err(|_| {
                crate::Error::Domain(format!("{MAX_CUTOFF_ENV}={v} is not an integer"))
            })?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
