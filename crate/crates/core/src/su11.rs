//! Two-by-two representation of SU(1,1).
//!
//! With `K+ = [[0,1],[0,0]]`, `K- = [[0,0],[-1,0]]` and `K0 = sigma3 / 2`
//! the squeeze operator for amplitude `zeta = r exp(2i theta)` maps to
//! `C(r, theta) = [[cosh r, e^{2i theta} sinh r], [e^{-2i theta} sinh r, cosh r]]`.
//! Operator products become matrix products, which is all the disentangling
//! the closed-form fidelity needs.

use std::ops::Mul;

use nalgebra::Complex;
use serde::Serialize;

use crate::error::{domain, finite, Result};
use crate::states::SqueezeParams;

type C64 = Complex<f64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su11Matrix {
    pub m: [[C64; 2]; 2],
}

impl Su11Matrix {
    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Su11Matrix {
            m: [[one, zero], [zero, one]],
        }
    }

    /// `diag(e^{i phi}, e^{-i phi})`, the image of `exp(i phi sigma3)`.
    pub fn phase(phi: f64) -> Self {
        let zero = C64::new(0.0, 0.0);
        Su11Matrix {
            m: [
                [C64::from_polar(1.0, phi), zero],
                [zero, C64::from_polar(1.0, -phi)],
            ],
        }
    }

    pub fn det(&self) -> C64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Group inverse; for a unit-determinant matrix this is the adjugate.
    pub fn inverse(&self) -> Self {
        let [[a, b], [c, d]] = self.m;
        Su11Matrix {
            m: [[d, -b], [-c, a]],
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut out = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                out = out.max((self.m[i][j] - other.m[i][j]).norm());
            }
        }
        out
    }
}

impl Mul for Su11Matrix {
    type Output = Su11Matrix;

    fn mul(self, rhs: Su11Matrix) -> Su11Matrix {
        let a = &self.m;
        let b = &rhs.m;
        let mut m = [[C64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Su11Matrix { m }
    }
}

/// Result of collapsing `S^dag(r1, theta1) S(r2, theta2)` into
/// `C(gamma_bar, theta_bar) exp(i phi sigma3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompositionResult {
    pub gamma_bar: f64,
    pub theta_bar: f64,
    pub phi: f64,
}

/// Squeeze C-matrix.
pub fn c_matrix(r: f64, theta: f64) -> Result<Su11Matrix> {
    if !r.is_finite() || !theta.is_finite() {
        return domain("squeeze parameters must be finite");
    }
    let ch = finite(r.cosh(), "cosh r")?;
    let sh = r.sinh();
    let off = C64::from_polar(sh, 2.0 * theta);
    Ok(Su11Matrix {
        m: [[C64::new(ch, 0.0), off], [off.conj(), C64::new(ch, 0.0)]],
    })
}

/// Collapses `S^dag(p1) S(p2)` to a single squeeze times a rotation.
///
/// `phi` is the phase of the (1,1) entry; `theta_bar` is zero when
/// `gamma_bar` vanishes.
pub fn compose_adjoint(p1: SqueezeParams, p2: SqueezeParams) -> Result<CompositionResult> {
    let product = c_matrix(p1.r, p1.theta)?.inverse() * c_matrix(p2.r, p2.theta)?;
    let m11 = product.m[0][0];
    let m12 = product.m[0][1];
    // |m12| = sinh(gamma_bar) stays accurate for nearly equal squeezes.
    let gamma_bar = m12.norm().asinh();
    let phi = m11.arg();
    let theta_bar = if gamma_bar > 0.0 {
        0.5 * (m12 * C64::from_polar(1.0, phi)).arg()
    } else {
        0.0
    };
    finite(gamma_bar, "gamma_bar")?;
    Ok(CompositionResult {
        gamma_bar,
        theta_bar,
        phi,
    })
}

/// `cosh^2(gamma_bar) = cos^2(dtheta) cosh^2(dr) + sin^2(dtheta) cosh^2(sum r)`.
pub fn cosh_sq_gamma_bar(p1: SqueezeParams, p2: SqueezeParams) -> Result<f64> {
    Ok(1.0 + sinh_sq_gamma_bar(p1, p2)?)
}

/// `cosh^2(gamma_bar) - 1`, evaluated without cancellation.
pub fn sinh_sq_gamma_bar(p1: SqueezeParams, p2: SqueezeParams) -> Result<f64> {
    let dtheta = p1.theta - p2.theta;
    let (s, c) = dtheta.sin_cos();
    let sd = (p1.r - p2.r).sinh();
    let ss = (p1.r + p2.r).sinh();
    finite(c * c * sd * sd + s * s * ss * ss, "sinh^2(gamma_bar)")
}

/// Effective inverse temperature of the reduced product, from
/// `cosh(beta3/2) = cosh^2(g) cosh((b1+b2)/2) - sinh^2(g) cosh((b1-b2)/2)`.
pub fn beta3(beta1: f64, beta2: f64, cosh_sq_gamma: f64) -> Result<f64> {
    if beta1.is_nan() || beta2.is_nan() || beta1 <= 0.0 || beta2 <= 0.0 {
        return domain("beta must be positive");
    }
    if cosh_sq_gamma.is_nan() || cosh_sq_gamma < 1.0 - 1e-12 {
        return domain("cosh^2(gamma_bar) must be at least 1");
    }
    let c = cosh_sq_gamma.max(1.0);
    let rhs = c * ((beta1 + beta2) / 2.0).cosh() - (c - 1.0) * ((beta1 - beta2) / 2.0).cosh();
    finite(rhs, "cosh(beta3/2)")?;
    if rhs < 1.0 - 1e-12 {
        return domain(format!("cosh(beta3/2) = {rhs} is below 1"));
    }
    Ok(2.0 * arcosh(rhs.max(1.0)))
}

/// `ln(x + sqrt((x-1)(x+1)))`, written with `ln_1p` so it stays accurate near `x = 1`.
pub fn arcosh(x: f64) -> f64 {
    let d = x - 1.0;
    if d < 1.0 {
        (d + (d * (x + 1.0)).sqrt()).ln_1p()
    } else {
        (x + (d * (x + 1.0)).sqrt()).ln()
    }
}
