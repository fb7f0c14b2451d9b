use nalgebra::Complex;
use serde::Serialize;

use super::density::{density_matrix, thermal_cutoff};
use super::linalg::{hermitian_eig, sqrt_psd};
use super::{OracleConfig, THERMAL_TAIL_TOL};
use crate::error::{domain, Error, Result};
use crate::states::StateParams;

/// Clamp for small negative eigenvalues of a single density matrix.
const RHO_NEG_TOL: f64 = 1e-10;
/// Eigenvalue pairs with `P_i + P_j` below this carry only rounding noise.
const PAIR_FLOOR: f64 = 1e-14;

/// Converged oracle fidelity with its cutoff history.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleFidelity {
    pub value: f64,
    pub cutoff: usize,
    /// `(cutoff, fidelity)` for each evaluated cutoff.
    pub history: Vec<(usize, f64)>,
}

/// `Tr sqrt(rho1^{1/2} rho2 rho1^{1/2})` at a fixed cutoff.
///
/// With `rho2 = B B^dag`, the product is `(rho1^{1/2} B)(rho1^{1/2} B)^dag`, so
/// the square roots of its eigenvalues are the singular values of
/// `rho1^{1/2} B`. Summing those keeps rounding noise in near-zero
/// eigenvalues from entering through a square root.
pub fn fidelity_at_cutoff(s1: &StateParams, s2: &StateParams, dim: usize) -> Result<f64> {
    let rho1 = density_matrix(s1, dim)?;
    let rho2 = density_matrix(s2, dim)?;
    let root = sqrt_psd(&rho1.entries, RHO_NEG_TOL)?;
    let half = &root * &rho2.factor;
    let svd = half
        .try_svd(false, false, f64::EPSILON, 1000 * dim)
        .ok_or_else(|| {
            Error::Convergence("singular value decomposition did not converge".into())
        })?;
    Ok(svd.singular_values.iter().sum())
}

/// Fidelity trace with adaptive cutoff.
///
/// Starts at the larger of `cfg.initial_cutoff` and the thermal-tail cutoff
/// of either state, then doubles (capped at `cfg.max_cutoff`) until two
/// successive values differ by less than `cfg.fidelity_tol`.
pub fn fidelity_trace_oracle(
    s1: &StateParams,
    s2: &StateParams,
    cfg: &OracleConfig,
) -> Result<OracleFidelity> {
    cfg.validate()?;
    let start = cfg
        .initial_cutoff
        .max(thermal_cutoff(s1.beta(), THERMAL_TAIL_TOL))
        .max(thermal_cutoff(s2.beta(), THERMAL_TAIL_TOL));
    if start > cfg.max_cutoff {
        return Err(Error::Cutoff(format!(
            "thermal tail needs cutoff {start} > max {}",
            cfg.max_cutoff
        )));
    }
    let mut dim = start;
    let mut history = vec![(dim, fidelity_at_cutoff(s1, s2, dim)?)];
    loop {
        if dim >= cfg.max_cutoff {
            let last = history.last().map(|h| h.1).unwrap_or(f64::NAN);
            return Err(Error::Cutoff(format!(
                "fidelity not converged to {:e} by cutoff {} (last value {last})",
                cfg.fidelity_tol, cfg.max_cutoff
            )));
        }
        dim = (2 * dim).min(cfg.max_cutoff);
        let value = fidelity_at_cutoff(s1, s2, dim)?;
        let prev = history.last().map(|h| h.1).unwrap_or(f64::NAN);
        history.push((dim, value));
        if (value - prev).abs() < cfg.fidelity_tol {
            return Ok(OracleFidelity {
                value,
                cutoff: dim,
                history,
            });
        }
    }
}

/// Cutoff used for eigenbasis-metric probes: twice the thermal-tail cutoff,
/// at least `cfg.initial_cutoff` and at most `cfg.max_cutoff`.
pub fn metric_cutoff(s: &StateParams, cfg: &OracleConfig) -> usize {
    (2 * thermal_cutoff(s.beta(), THERMAL_TAIL_TOL))
        .max(cfg.initial_cutoff)
        .min(cfg.max_cutoff)
}

/// Statistical-distance quadratic form in the eigenbasis of `rho`,
///
/// ```text
/// ds^2 = 1/2 sum_{i,j} |<u_i| d rho |u_j>|^2 / (P_i + P_j)
/// ```
///
/// with `d rho = (rho(s + delta) - rho(s - delta)) / 2`. The sum runs over
/// all ordered pairs, diagonal included.
pub fn metric_eigenbasis(s: &StateParams, delta: [f64; 3], dim: usize) -> Result<f64> {
    if delta.iter().any(|d| !d.is_finite()) {
        return domain("displacement must be finite");
    }
    if delta.iter().all(|&d| d == 0.0) {
        return Ok(0.0);
    }
    if s.beta() - delta[0].abs() <= 0.0 {
        return domain("displacement crosses beta <= 0");
    }
    let plus = density_matrix(&s.displaced(delta)?, dim)?;
    let minus = density_matrix(&s.displaced(delta.map(|d| -d))?, dim)?;
    let rho = density_matrix(s, dim)?;
    let drho = (plus.entries - minus.entries) * Complex::new(0.5, 0.0);

    let eig = hermitian_eig(&rho.entries)?;
    if let Some(&lo) = eig.values.first() {
        if lo < -RHO_NEG_TOL {
            return Err(Error::NegativeEigenvalue {
                value: lo,
                threshold: RHO_NEG_TOL,
            });
        }
    }
    let p: Vec<f64> = eig.values.iter().map(|v| v.max(0.0)).collect();
    let rotated = eig.vectors.adjoint() * &drho * &eig.vectors;
    let mut sum = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            let w = p[i] + p[j];
            if w > PAIR_FLOOR {
                sum += rotated[(i, j)].norm_sqr() / w;
            }
        }
    }
    Ok(0.5 * sum)
}
