use nalgebra::Matrix3;
use serde::Serialize;

use super::metric::metric_at;
use crate::error::{domain, Error, Result};
use crate::numeric::richardson2;
use crate::states::StateParams;
use crate::su11::arcosh;

/// `R -> -8` as `beta -> 0`.
pub const CURVATURE_LIMIT_LOW_BETA: f64 = -8.0;
/// `R -> -24` as `beta -> inf`.
pub const CURVATURE_LIMIT_HIGH_BETA: f64 = -24.0;
/// `R(beta*) = -47/7`.
pub const CURVATURE_AT_BETA_STAR: f64 = -47.0 / 7.0;

/// Smallest `r` accepted by the numeric curvature probe.
const MIN_PROBE_R: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureValue {
    pub beta: f64,
    pub r_scalar: f64,
}

/// The unique interior stationary point of `R(beta)`, `4 arcosh(5 / sqrt(22))`,
/// where `sinh^2(beta/4) = 3/22`.
pub fn beta_star() -> f64 {
    4.0 * arcosh(5.0 / 22f64.sqrt())
}

/// `R(beta) = -8 (cosh^2(beta/4) + 12 sinh^4(beta/4)) / cosh^2(beta/2)`.
///
/// With `s = sinh^2(beta/4)` this is `-8 (1 + s + 12 s^2) / (1 + 2s)^2`; for
/// `s > 1` it is evaluated in `1/s` so large `beta` tends to -24 without
/// overflow.
pub fn scalar_curvature_closed(beta: f64) -> Result<CurvatureValue> {
    if beta.is_nan() || beta <= 0.0 {
        return domain("beta must be positive");
    }
    let s = (beta / 4.0).sinh().powi(2);
    let r_scalar = if s <= 1.0 {
        -8.0 * (1.0 + s + 12.0 * s * s) / (1.0 + 2.0 * s).powi(2)
    } else {
        let w = 1.0 / s;
        -8.0 * (w * w + w + 12.0) / (w + 2.0).powi(2)
    };
    Ok(CurvatureValue { beta, r_scalar })
}

/// Scalar curvature of the closed-form metric from finite differences,
/// independent of [`scalar_curvature_closed`].
pub fn scalar_curvature_numeric(s: &StateParams, h: f64) -> Result<CurvatureValue> {
    if !(h > 0.0 && h.is_finite()) {
        return domain("step must be positive");
    }
    if s.beta() <= 10.0 * h {
        return domain(format!(
            "beta = {} is too close to the chart boundary for step {h}",
            s.beta()
        ));
    }
    if s.r() < MIN_PROBE_R {
        return domain(format!(
            "r = {} is inside the r = 0 coordinate degeneracy; use r >= {MIN_PROBE_R}",
            s.r()
        ));
    }
    let metric = |x: [f64; 3]| metric_at(x[0], x[1]).map(|g| g.as_matrix());
    let r_scalar = scalar_curvature_from_metric(metric, s.coords(), h)?;
    Ok(CurvatureValue {
        beta: s.beta(),
        r_scalar,
    })
}

/// Scalar curvature of an arbitrary 3-dimensional metric `g(x)` at `x`.
///
/// Christoffel symbols and their derivatives come from central differences
/// of `g`; the result is Richardson-extrapolated from steps `h` and `h/2`.
pub fn scalar_curvature_from_metric<F>(metric: F, x: [f64; 3], h: f64) -> Result<f64>
where
    F: Fn([f64; 3]) -> Result<[[f64; 3]; 3]>,
{
    let coarse = scalar_curvature_at_step(&metric, x, h)?;
    let fine = scalar_curvature_at_step(&metric, x, h / 2.0)?;
    Ok(richardson2(coarse, fine))
}

type Sym = [[f64; 3]; 3];

fn shifted(x: [f64; 3], moves: &[(usize, f64)]) -> [f64; 3] {
    let mut y = x;
    for &(i, d) in moves {
        y[i] += d;
    }
    y
}

fn combine(terms: &[(f64, Sym)]) -> Sym {
    let mut out = [[0.0; 3]; 3];
    for (c, m) in terms {
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] += c * m[i][j];
            }
        }
    }
    out
}

fn scalar_curvature_at_step<F>(metric: &F, x: [f64; 3], h: f64) -> Result<f64>
where
    F: Fn([f64; 3]) -> Result<Sym>,
{
    let g = metric(x)?;
    let ginv_m = Matrix3::from_fn(|i, j| g[i][j])
        .try_inverse()
        .ok_or_else(|| Error::Domain("metric is singular at the probe point".into()))?;
    let ginv: Sym = std::array::from_fn(|i| std::array::from_fn(|j| ginv_m[(i, j)]));

    // dg[k][i][j] = d_k g_ij, ddg[k][l][i][j] = d_k d_l g_ij
    let mut dg = [[[0.0; 3]; 3]; 3];
    let mut ddg = [[[[0.0; 3]; 3]; 3]; 3];
    for k in 0..3 {
        let plus = metric(shifted(x, &[(k, h)]))?;
        let minus = metric(shifted(x, &[(k, -h)]))?;
        dg[k] = combine(&[(0.5 / h, plus), (-0.5 / h, minus)]);
        ddg[k][k] = combine(&[
            (1.0 / (h * h), plus),
            (-2.0 / (h * h), g),
            (1.0 / (h * h), minus),
        ]);
        for l in 0..k {
            let c = 0.25 / (h * h);
            let v = combine(&[
                (c, metric(shifted(x, &[(k, h), (l, h)]))?),
                (-c, metric(shifted(x, &[(k, h), (l, -h)]))?),
                (-c, metric(shifted(x, &[(k, -h), (l, h)]))?),
                (c, metric(shifted(x, &[(k, -h), (l, -h)]))?),
            ]);
            ddg[k][l] = v;
            ddg[l][k] = v;
        }
    }

    // d_m g^{il} = -g^{ia} (d_m g_ab) g^{bl}
    let mut dginv = [[[0.0; 3]; 3]; 3];
    for m in 0..3 {
        for i in 0..3 {
            for l in 0..3 {
                let mut acc = 0.0;
                for a in 0..3 {
                    for b in 0..3 {
                        acc -= ginv[i][a] * dg[m][a][b] * ginv[b][l];
                    }
                }
                dginv[m][i][l] = acc;
            }
        }
    }

    // Gamma^i_jk and d_m Gamma^i_jk
    let mut gamma = [[[0.0; 3]; 3]; 3];
    let mut dgamma = [[[[0.0; 3]; 3]; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let mut acc = 0.0;
                for l in 0..3 {
                    let lower = dg[j][l][k] + dg[k][l][j] - dg[l][j][k];
                    acc += 0.5 * ginv[i][l] * lower;
                    for m in 0..3 {
                        let dlower = ddg[m][j][l][k] + ddg[m][k][l][j] - ddg[m][l][j][k];
                        dgamma[m][i][j][k] += 0.5 * (dginv[m][i][l] * lower + ginv[i][l] * dlower);
                    }
                }
                gamma[i][j][k] = acc;
            }
        }
    }

    // R_jk = d_i G^i_jk - d_k G^i_ji + G^i_ip G^p_jk - G^i_kp G^p_ji
    let mut scalar = 0.0;
    for j in 0..3 {
        for k in 0..3 {
            let mut ricci = 0.0;
            for i in 0..3 {
                ricci += dgamma[i][i][j][k] - dgamma[k][i][j][i];
                for p in 0..3 {
                    ricci += gamma[i][i][p] * gamma[p][j][k] - gamma[i][k][p] * gamma[p][j][i];
                }
            }
            scalar += ginv[j][k] * ricci;
        }
    }
    if !scalar.is_finite() {
        return Err(Error::Overflow("scalar curvature is not finite".into()));
    }
    Ok(scalar)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn generic_curvature_on_known_spaces() {
        // Hyperbolic 3-space, upper half-space model: R = -6.
        let hyp = |x: [f64; 3]| {
            let c = 1.0 / (x[2] * x[2]);
            Ok([[c, 0.0, 0.0], [0.0, c, 0.0], [0.0, 0.0, c]])
        };
        let r = scalar_curvature_from_metric(hyp, [0.3, -0.2, 1.7], 1e-3).unwrap();
        assert!((r + 6.0).abs() < 1e-6, "{r}");

        // Round 3-sphere of radius 2: R = 6 / 4.
        let a2 = 4.0;
        let sphere = |x: [f64; 3]| {
            let s1 = x[0].sin().powi(2);
            let s2 = x[1].sin().powi(2);
            Ok([
                [a2, 0.0, 0.0],
                [0.0, a2 * s1, 0.0],
                [0.0, 0.0, a2 * s1 * s2],
            ])
        };
        let r = scalar_curvature_from_metric(sphere, [1.1, 0.7, 0.2], 1e-3).unwrap();
        assert!((r - 1.5).abs() < 1e-6, "{r}");

        // Flat space in cylindrical coordinates.
        let flat = |x: [f64; 3]| Ok([[1.0, 0.0, 0.0], [0.0, x[0] * x[0], 0.0], [0.0, 0.0, 1.0]]);
        let r = scalar_curvature_from_metric(flat, [1.3, 0.5, 0.0], 1e-3).unwrap();
        assert!(r.abs() < 1e-6, "{r}");
    }

    #[test]
    fn closed_curvature_examples() {
        let r = scalar_curvature_closed(1e-9).unwrap().r_scalar;
        assert!((r - CURVATURE_LIMIT_LOW_BETA).abs() < 1e-12);
        let r = scalar_curvature_closed(2.0).unwrap().r_scalar;
        assert!((r - -7.24490).abs() < 1e-5);
        let r = scalar_curvature_closed(beta_star()).unwrap().r_scalar;
        assert!((r - CURVATURE_AT_BETA_STAR).abs() < 1e-14);
        assert!((r - -6.71429).abs() < 5e-6);
        let r = scalar_curvature_closed(1e4).unwrap().r_scalar;
        assert_eq!(r, CURVATURE_LIMIT_HIGH_BETA);
        assert!(scalar_curvature_closed(0.0).is_err());
    }

    #[test]
    fn closed_curvature_matches_hyperbolic_form() {
        for &beta in &[0.5f64, 2.0, 4.0, 9.0] {
            let direct = -8.0 * ((beta / 4.0).cosh().powi(2) + 12.0 * (beta / 4.0).sinh().powi(4))
                / (beta / 2.0).cosh().powi(2);
            let r = scalar_curvature_closed(beta).unwrap().r_scalar;
            assert!(rel(r, direct) < 1e-14);
        }
    }

    #[test]
    fn beta_star_value() {
        let b = beta_star();
        assert!((b - 1.445437).abs() < 1e-5);
        assert!((b - 1.44543438717583).abs() < 1e-13);
        assert!(((b / 4.0).sinh().powi(2) - 3.0 / 22.0).abs() < 1e-15);
    }

    #[test]
    fn numeric_curvature_examples() {
        let s = StateParams::new(2.0, 0.5, 0.3).unwrap();
        let r = scalar_curvature_numeric(&s, 1e-3).unwrap().r_scalar;
        assert!((r - -7.245).abs() < 0.008);
        assert!(rel(r, scalar_curvature_closed(2.0).unwrap().r_scalar) < 1e-3);

        let a = scalar_curvature_numeric(&StateParams::new(2.0, 0.2, 0.0).unwrap(), 1e-3).unwrap();
        let b = scalar_curvature_numeric(&StateParams::new(2.0, 0.8, 1.0).unwrap(), 1e-3).unwrap();
        assert!(rel(a.r_scalar, b.r_scalar) < 1e-3);

        let s = StateParams::new(0.5, 0.4, 0.0).unwrap();
        let r = scalar_curvature_numeric(&s, 1e-3).unwrap().r_scalar;
        assert!(rel(r, scalar_curvature_closed(0.5).unwrap().r_scalar) < 1e-3);
    }

    #[test]
    fn numeric_curvature_rejects_degenerate_points() {
        let s = StateParams::new(2.0, 0.01, 0.0).unwrap();
        assert!(scalar_curvature_numeric(&s, 1e-3).is_err());
        let s = StateParams::new(0.005, 0.5, 0.0).unwrap();
        assert!(scalar_curvature_numeric(&s, 1e-3).is_err());
    }

    #[test]
    fn curvature_range_and_shape() {
        let bs = beta_star();
        let mut prev = f64::NEG_INFINITY;
        let mut beta = 1e-3;
        while beta < 60.0 {
            let r = scalar_curvature_closed(beta).unwrap().r_scalar;
            assert!(r < 0.0 && r > -24.0 && r <= CURVATURE_AT_BETA_STAR + 1e-15);
            if beta < bs {
                assert!(r > prev, "not increasing at {beta}");
            } else if prev > f64::NEG_INFINITY && beta - 0.01 > bs {
                assert!(r < prev, "not decreasing at {beta}");
            }
            prev = r;
            beta += 0.01;
        }
    }
}
