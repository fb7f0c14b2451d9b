//! Parameter domain of undisplaced squeezed thermal states.
//!
//! A state is labelled by `(beta, r, theta)` where `beta` is the
//! dimensionless inverse temperature, `r` the squeeze magnitude and `theta`
//! the squeeze phase. The squeeze amplitude is `zeta = r * exp(2i * theta)`,
//! so `theta` has period `pi` and `theta -> theta + pi/2` negates `zeta`.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{domain, finite, Error, Result};

/// Largest `beta / 4` for which `exp(-beta / 4)` stays a normal float.
const MAX_QUARTER_BETA: f64 = 708.0;

/// Canonical squeezed thermal state parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateParams {
    beta: f64,
    r: f64,
    theta: f64,
}

impl StateParams {
    /// Validates and canonicalizes; see [`canonicalize`].
    pub fn new(beta: f64, r: f64, theta: f64) -> Result<Self> {
        canonicalize(beta, r, theta)
    }

    /// Unsqueezed thermal state.
    pub fn thermal(beta: f64) -> Result<Self> {
        canonicalize(beta, 0.0, 0.0)
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn squeeze(&self) -> SqueezeParams {
        SqueezeParams {
            r: self.r,
            theta: self.theta,
        }
    }

    /// Raw coordinates `[beta, r, theta]`.
    pub fn coords(&self) -> [f64; 3] {
        [self.beta, self.r, self.theta]
    }

    /// Canonicalizes `coords + delta`, folding negative `r` through zeta-negation.
    pub fn displaced(&self, delta: [f64; 3]) -> Result<Self> {
        canonicalize(
            self.beta + delta[0],
            self.r + delta[1],
            self.theta + delta[2],
        )
    }

    /// State equality on canonical parameters, absolute tolerance `tol`.
    ///
    /// The phase is compared modulo `pi` and ignored when both states are
    /// unsqueezed.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if (self.beta - other.beta).abs() > tol || (self.r - other.r).abs() > tol {
            return false;
        }
        if self.r <= tol && other.r <= tol {
            return true;
        }
        let d = (self.theta - other.theta).rem_euclid(PI);
        d.min(PI - d) <= tol
    }
}

/// The squeeze part `(r, theta)` of a state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SqueezeParams {
    pub r: f64,
    pub theta: f64,
}

impl SqueezeParams {
    pub fn new(r: f64, theta: f64) -> Self {
        SqueezeParams { r, theta }
    }
}

/// Validates `(beta, r, theta)` and returns the canonical representative.
///
/// Negative `r` maps to `(-r, theta + pi/2)`; `theta` is reduced into `[0, pi)`.
pub fn canonicalize(beta: f64, r: f64, theta: f64) -> Result<StateParams> {
    if !beta.is_finite() || !r.is_finite() || !theta.is_finite() {
        return domain("state parameters must be finite");
    }
    if beta <= 0.0 {
        return domain("beta must be positive");
    }
    let (r, theta) = if r < 0.0 {
        (-r, theta + FRAC_PI_2)
    } else {
        (r, theta)
    };
    let mut theta = theta.rem_euclid(PI);
    if theta >= PI {
        theta = 0.0;
    }
    Ok(StateParams { beta, r, theta })
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_nan() || beta <= 0.0 {
        return domain("beta must be positive");
    }
    Ok(())
}

/// Trace normalization `Z = 2 sinh(beta / 4)` of `exp(-beta K0)`.
pub fn normalization_z(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    finite(2.0 * (beta / 4.0).sinh(), "normalization 2 sinh(beta/4)")
}

/// Chart coordinate `u` with `exp(-2u) = tanh(beta / 8)`.
///
/// Evaluated as `artanh(exp(-beta / 4))`, which is the same function and
/// keeps full relative accuracy at both ends of the range.
pub fn u_coordinate(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    if beta / 4.0 > MAX_QUARTER_BETA {
        return Err(Error::Overflow(format!(
            "beta = {beta} is beyond the representable range of the u chart"
        )));
    }
    let q = (-beta / 4.0).exp();
    // artanh(q) = (ln(1 + q) - ln(1 - q)) / 2
    let ln_one_minus_q = if q < 0.5 {
        (-q).ln_1p()
    } else {
        (-(-beta / 4.0).exp_m1()).ln()
    };
    Ok(0.5 * (q.ln_1p() - ln_one_minus_q))
}

/// Inverse of [`u_coordinate`]: `beta = 8 artanh(exp(-2u))`.
pub fn beta_from_u(u: f64) -> Result<f64> {
    if u.is_nan() || u <= 0.0 {
        return domain("u must be positive");
    }
    if u.is_infinite() {
        return domain("u must be finite");
    }
    let w = (-2.0 * u).exp();
    let ln_one_minus_w = if w < 0.5 {
        (-w).ln_1p()
    } else {
        (-(-2.0 * u).exp_m1()).ln()
    };
    let beta = 4.0 * (w.ln_1p() - ln_one_minus_w);
    finite(beta, "beta from u")
}

/// Thermal occupation `1 / (exp(beta/2) - 1)`.
///
/// Follows from `K0 = (a^dag a + 1/2) / 2`: each photon carries Boltzmann
/// weight `exp(-beta/2)`. Equivalently `2 nbar + 1 = coth(beta/4)`.
pub fn mean_photon_number(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(1.0 / (beta / 2.0).exp_m1())
}
