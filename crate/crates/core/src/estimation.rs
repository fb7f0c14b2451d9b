//! Measurement-count bounds and distinguishability extrema.
//!
//! Distinguishability is reported as `|R|`, with `R` the (everywhere negative)
//! scalar curvature; the signed value is kept alongside.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::geometry::scalar_curvature_closed;

/// Lower bound `ceil(1 / ds^2)` on the number of copies needed to separate
/// two states at statistical distance `ds`.
///
/// The bound is infinitesimal; applied to a finite `D_B^2` it is indicative only.
pub fn min_measurements(ds_sq: f64) -> Result<u64> {
    if ds_sq.is_nan() || ds_sq <= 0.0 {
        return domain("ds^2 must be positive");
    }
    let n = (1.0 / ds_sq).ceil();
    if n >= u64::MAX as f64 {
        return Err(Error::Overflow(format!("1/ds^2 for ds^2 = {ds_sq:e}")));
    }
    Ok(n as u64)
}

/// `|R(beta)|`.
pub fn distinguishability(beta: f64) -> Result<f64> {
    Ok(scalar_curvature_closed(beta)?.r_scalar.abs())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremumKind {
    /// Interval end where `|R|` is locally largest.
    BoundaryMaxAbs,
    /// Interval end where `|R|` is locally smallest.
    BoundaryMinAbs,
    /// Interior stationary point where `|R|` is smallest (`R` peaks).
    InteriorMinAbs,
    /// Interior stationary point where `|R|` is largest.
    InteriorMaxAbs,
    /// Upper end lies on the `R -> -24` plateau.
    Asymptote,
}

impl ExtremumKind {
    pub fn is_interior(self) -> bool {
        matches!(
            self,
            ExtremumKind::InteriorMinAbs | ExtremumKind::InteriorMaxAbs
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremumRecord {
    pub beta: f64,
    pub r_scalar: f64,
    pub kind: ExtremumKind,
}

/// Number of log-spaced brackets scanned for sign changes of `dR/dbeta`.
const BRACKETS: usize = 512;
/// Upper ends this close to -24 are reported as the asymptote.
const ASYMPTOTE_TOL: f64 = 1e-3;
/// Interior roots are always refined at least this far.
const MIN_REFINE: f64 = 1e-10;

fn curvature(beta: f64) -> f64 {
    scalar_curvature_closed(beta)
        .map(|c| c.r_scalar)
        .unwrap_or(f64::NAN)
}

/// Central-difference `dR/dbeta` with a step scaled to `beta`.
fn curvature_slope(beta: f64) -> f64 {
    let h = 1e-5 * beta.max(1e-3);
    (curvature(beta + h) - curvature(beta - h)) / (2.0 * h)
}

/// Stationary points of `R` on `[beta_min, beta_max]` plus the behavior at
/// both ends, sorted by `beta`.
///
/// Sign changes of a finite-difference slope are bracketed on a log-spaced
/// grid and refined by bisection to `min(tol, 1e-10)`.
pub fn find_extrema(beta_min: f64, beta_max: f64, tol: f64) -> Result<Vec<ExtremumRecord>> {
    if !(beta_min > 0.0 && beta_max > beta_min && beta_max.is_finite()) {
        return domain("need 0 < beta_min < beta_max");
    }
    if !(tol > 0.0) {
        return domain("tol must be positive");
    }
    let ratio = (beta_max / beta_min).ln();
    let grid: Vec<f64> = (0..=BRACKETS)
        .map(|i| beta_min * (ratio * i as f64 / BRACKETS as f64).exp())
        .collect();
    let slopes: Vec<f64> = grid.iter().map(|&b| curvature_slope(b)).collect();

    let mut records = Vec::new();
    let width = tol.min(MIN_REFINE);
    for k in 0..BRACKETS {
        let (mut lo, mut hi) = (grid[k], grid[k + 1]);
        let (s_lo, s_hi) = (slopes[k], slopes[k + 1]);
        if !(s_lo * s_hi < 0.0 || (s_hi == 0.0 && k + 1 < BRACKETS)) {
            continue;
        }
        let rising = s_lo > 0.0;
        while hi - lo > width {
            let mid = 0.5 * (lo + hi);
            if (curvature_slope(mid) > 0.0) == rising {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let beta = 0.5 * (lo + hi);
        // R peaks where the slope goes from + to -, i.e. |R| is smallest there
        let kind = if rising {
            ExtremumKind::InteriorMinAbs
        } else {
            ExtremumKind::InteriorMaxAbs
        };
        records.push(ExtremumRecord {
            beta,
            r_scalar: curvature(beta),
            kind,
        });
    }

    let r_lo = curvature(beta_min);
    // |R| shrinks moving inward from the left end when R rises
    let left_kind = if slopes[0] > 0.0 {
        ExtremumKind::BoundaryMaxAbs
    } else {
        ExtremumKind::BoundaryMinAbs
    };
    records.push(ExtremumRecord {
        beta: beta_min,
        r_scalar: r_lo,
        kind: left_kind,
    });
    let r_hi = curvature(beta_max);
    let right_kind = if (r_hi - crate::geometry::CURVATURE_LIMIT_HIGH_BETA).abs() < ASYMPTOTE_TOL {
        ExtremumKind::Asymptote
    } else if slopes[BRACKETS] < 0.0 {
        ExtremumKind::BoundaryMaxAbs
    } else {
        ExtremumKind::BoundaryMinAbs
    };
    records.push(ExtremumRecord {
        beta: beta_max,
        r_scalar: r_hi,
        kind: right_kind,
    });
    records.sort_by(|a, b| a.beta.total_cmp(&b.beta));
    Ok(records)
}
