use serde::Serialize;

use crate::closedform::bures_distance_sq;
use crate::error::{domain, finite, Result};
use crate::numeric::richardson2;
use crate::states::{u_coordinate, StateParams};

/// Default finite-difference step for metric and curvature extraction.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Diagonal metric components in `(beta, r, theta)` order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricTensor {
    pub g_bb: f64,
    pub g_rr: f64,
    pub g_tt: f64,
    /// `g_bb` underflowed to zero (very large `beta`).
    pub g_bb_underflow: bool,
}

impl MetricTensor {
    pub fn diagonal(&self) -> [f64; 3] {
        [self.g_bb, self.g_rr, self.g_tt]
    }

    /// The `theta` direction has zero length (only at `r = 0`).
    pub fn theta_degenerate(&self) -> bool {
        self.g_tt == 0.0
    }

    pub fn as_matrix(&self) -> [[f64; 3]; 3] {
        [
            [self.g_bb, 0.0, 0.0],
            [0.0, self.g_rr, 0.0],
            [0.0, 0.0, self.g_tt],
        ]
    }
}

/// Closed-form metric at `s`.
pub fn metric_closed(s: &StateParams) -> Result<MetricTensor> {
    metric_at(s.beta(), s.r())
}

/// Closed-form metric at raw coordinates; `r` may be negative here.
pub(crate) fn metric_at(beta: f64, r: f64) -> Result<MetricTensor> {
    if beta.is_nan() || beta <= 0.0 {
        return domain("beta must be positive");
    }
    let sh = (beta / 4.0).sinh();
    let g_bb = 1.0 / (64.0 * sh * sh);
    let g_rr = 0.5 * (1.0 + 1.0 / (beta / 2.0).cosh());
    let g_tt = finite(g_rr * (2.0 * r).sinh().powi(2), "g_tt")?;
    Ok(MetricTensor {
        g_bb,
        g_rr,
        g_tt,
        g_bb_underflow: g_bb == 0.0,
    })
}

/// Hessian of `D_B^2 / 2` extracted by finite differences.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericMetric {
    pub hessian: [[f64; 3]; 3],
    /// The `theta` row and column were skipped (`r` too small for the step).
    pub theta_degenerate: bool,
}

impl NumericMetric {
    pub fn diagonal(&self) -> [f64; 3] {
        [self.hessian[0][0], self.hessian[1][1], self.hessian[2][2]]
    }

    pub fn max_off_diagonal(&self) -> f64 {
        let h = &self.hessian;
        h[0][1].abs().max(h[0][2].abs()).max(h[1][2].abs())
    }
}

/// Second-difference Hessian of `D_B^2(s, s + x) / 2` at `x = 0`, with one
/// Richardson step (`h` and `h/2`).
///
/// Requires `beta > 10 h`. When `r <= 10 h` the `theta` row is skipped and
/// reported as degenerate; the `r` row is still valid because negative `r`
/// folds onto the same states.
pub fn metric_numeric(s: &StateParams, h: f64) -> Result<NumericMetric> {
    if !(h > 0.0 && h.is_finite()) {
        return domain("step must be positive");
    }
    if s.beta() <= 10.0 * h {
        return domain(format!(
            "beta = {} is too close to the chart boundary for step {h}",
            s.beta()
        ));
    }
    let theta_degenerate = s.r() <= 10.0 * h;
    let dims = if theta_degenerate { 2 } else { 3 };
    let coarse = hessian(s, h, dims)?;
    let fine = hessian(s, h / 2.0, dims)?;
    let mut out = [[0.0; 3]; 3];
    for i in 0..dims {
        for j in 0..dims {
            out[i][j] = richardson2(coarse[i][j], fine[i][j]);
        }
    }
    Ok(NumericMetric {
        hessian: out,
        theta_degenerate,
    })
}

fn hessian(s: &StateParams, h: f64, dims: usize) -> Result<[[f64; 3]; 3]> {
    let f = |d: [f64; 3]| -> Result<f64> {
        let t = s.displaced(d)?;
        Ok(0.5 * bures_distance_sq(s, &t)?)
    };
    let step = |i: usize, a: f64| {
        let mut d = [0.0; 3];
        d[i] = a;
        d
    };
    let mut out = [[0.0; 3]; 3];
    for i in 0..dims {
        // f(0) = 0
        out[i][i] = (f(step(i, h))? + f(step(i, -h))?) / (h * h);
        for j in 0..i {
            let pair = |a: f64, b: f64| {
                let mut d = [0.0; 3];
                d[i] = a;
                d[j] = b;
                f(d)
            };
            let v = (pair(h, h)? - pair(h, -h)? - pair(-h, h)? + pair(-h, -h)?) / (4.0 * h * h);
            out[i][j] = v;
            out[j][i] = v;
        }
    }
    Ok(out)
}

/// Length of the pure-`beta` segment `[beta_lo, beta_hi]`:
/// `integral sqrt(g_bb) dbeta = u(beta_lo) - u(beta_hi)`.
///
/// `beta_hi` may be `f64::INFINITY`, giving the finite value `u(beta_lo)`.
pub fn geodesic_length_beta(beta_lo: f64, beta_hi: f64) -> Result<f64> {
    if beta_lo.is_nan() || beta_hi.is_nan() || beta_lo <= 0.0 {
        return domain("beta must be positive");
    }
    if beta_hi < beta_lo {
        return domain("beta_lo must not exceed beta_hi");
    }
    if beta_hi == beta_lo {
        return Ok(0.0);
    }
    let lo = u_coordinate(beta_lo)?;
    if beta_hi.is_infinite() || beta_hi / 4.0 > 708.0 {
        return Ok(lo);
    }
    Ok(lo - u_coordinate(beta_hi)?)
}
