//! Closed-form fidelity and Bures distance between squeezed thermal states.
//!
//! The fidelity trace is
//!
//! ```text
//! F = sqrt(2 sinh(b1/4) sinh(b2/4)) / sqrt(sqrt(Y) - 1)
//! ```
//!
//! with `Y = cosh^2(beta3 / 4)` built from the squeeze mismatch. The
//! variant with numerator `2 sinh(b1/4) sinh(b2/4)` (no square root) does not
//! reduce to the thermal result and is not used.

use serde::Serialize;

use crate::error::{finite, Error, Result};
use crate::states::StateParams;
use crate::su11::sinh_sq_gamma_bar;

/// Canonical-parameter tolerance below which two states count as equal.
pub const STATE_EQ_TOL: f64 = 1e-14;

/// Fidelity trace, squared Bures distance and the `Y` factor for a pair of states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityResult {
    pub fidelity_trace: f64,
    pub bures_distance_sq: f64,
    pub y_factor: f64,
}

impl FidelityResult {
    pub fn bures_distance(&self) -> f64 {
        self.bures_distance_sq.sqrt()
    }

    /// Bures angle `arccos F`.
    pub fn bures_angle(&self) -> f64 {
        self.fidelity_trace.acos()
    }
}

/// `Y` exactly as the product formula reads, with `cosh^2` terms.
///
/// Loses precision when `Y` is close to 1; the fidelity uses
/// [`y_minus_one_stable`] instead.
pub fn y_factor(s1: &StateParams, s2: &StateParams) -> Result<f64> {
    let dtheta = s1.theta() - s2.theta();
    let (sin, cos) = dtheta.sin_cos();
    let dr = s1.r() - s2.r();
    let sr = s1.r() + s2.r();
    let bp = (s1.beta() + s2.beta()) / 4.0;
    let bm = (s1.beta() - s2.beta()) / 4.0;
    let ch2 = |x: f64| x.cosh().powi(2);
    let sh2 = |x: f64| x.sinh().powi(2);
    let y = cos * cos * (ch2(dr) * ch2(bp) - sh2(dr) * ch2(bm))
        + sin * sin * (ch2(sr) * ch2(bp) - sh2(sr) * ch2(bm));
    finite(y, "Y")
}

/// `Y - 1 = sinh^2((b1+b2)/4) + sinh(b1/2) sinh(b2/2) sinh^2(gamma_bar)`.
///
/// Every term is nonnegative, so there is no cancellation.
pub fn y_minus_one_stable(s1: &StateParams, s2: &StateParams) -> Result<f64> {
    let bp = (s1.beta() + s2.beta()) / 4.0;
    let mismatch = sinh_sq_gamma_bar(s1.squeeze(), s2.squeeze())?;
    let thermal = bp.sinh().powi(2);
    let cross = if mismatch == 0.0 {
        0.0
    } else {
        (s1.beta() / 2.0).sinh() * (s2.beta() / 2.0).sinh() * mismatch
    };
    finite(thermal + cross, "Y - 1")
}

/// Closed-form `Tr sqrt(rho1^{1/2} rho2 rho1^{1/2})`.
pub fn fidelity_trace(s1: &StateParams, s2: &StateParams) -> Result<FidelityResult> {
    let ym1 = y_minus_one_stable(s1, s2)?;
    let y = 1.0 + ym1;
    if s1.approx_eq(s2, STATE_EQ_TOL) {
        return Ok(FidelityResult {
            fidelity_trace: 1.0,
            bures_distance_sq: 0.0,
            y_factor: y,
        });
    }
    if ym1 <= 0.0 {
        return Err(Error::Internal(format!("Y - 1 = {ym1} is not positive")));
    }
    // sqrt(Y) - 1 = (Y - 1) / (sqrt(Y) + 1)
    let sqrt_y_minus_one = ym1 / (y.sqrt() + 1.0);
    let num = 2.0 * (s1.beta() / 4.0).sinh() * (s2.beta() / 4.0).sinh();
    let f = finite((num / sqrt_y_minus_one).sqrt(), "fidelity")?;
    let f = clamp_fidelity(f)?;
    Ok(FidelityResult {
        fidelity_trace: f,
        bures_distance_sq: 2.0 * (1.0 - f),
        y_factor: y,
    })
}

/// Rounds `F` in `(1, 1 + 1e-12]` down to 1; larger excursions are errors.
pub(crate) fn clamp_fidelity(f: f64) -> Result<f64> {
    if f > 1.0 + 1e-12 {
        return Err(Error::Internal(format!("fidelity {f} exceeds 1")));
    }
    Ok(f.min(1.0))
}

/// Fidelity between two unsqueezed thermal states,
/// `sqrt(sinh(b1/4) sinh(b2/4)) / sinh((b1+b2)/8)`.
///
/// Evaluated as the overflow-free ratio of `1 - exp(-2x)` factors.
pub fn thermal_fidelity(beta1: f64, beta2: f64) -> Result<f64> {
    if beta1.is_nan() || beta2.is_nan() || beta1 <= 0.0 || beta2 <= 0.0 {
        return Err(Error::Domain("beta must be positive".into()));
    }
    let a = beta1 / 4.0;
    let b = beta2 / 4.0;
    let num = ((-2.0 * a).exp_m1() * (-2.0 * b).exp_m1()).sqrt();
    let den = -(-(a + b)).exp_m1();
    clamp_fidelity(num / den)
}

/// Squared Bures distance `2 (1 - F)`.
pub fn bures_distance_sq(s1: &StateParams, s2: &StateParams) -> Result<f64> {
    Ok(fidelity_trace(s1, s2)?.bures_distance_sq)
}
