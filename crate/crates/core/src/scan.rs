//! Curvature-versus-`beta` tables.

use serde::Serialize;

use crate::error::{domain, Result};
use crate::format::{round_sig9, sig9};
use crate::geometry::{metric_closed, scalar_curvature_closed};
use crate::states::{u_coordinate, StateParams};

pub const CSV_HEADER: &str = "beta,u,r_scalar,abs_r,g_bb,g_rr,g_tt";

/// One row of a scan; `g_rr` and `g_tt` are evaluated at the scan's fixed `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub beta: f64,
    pub u: f64,
    pub r_scalar: f64,
    pub abs_r: f64,
    pub g_bb: f64,
    pub g_rr: f64,
    pub g_tt: f64,
}

/// `steps` evenly spaced rows from `beta_min` to `beta_max` inclusive.
pub fn scan(beta_min: f64, beta_max: f64, steps: usize, r: f64) -> Result<Vec<ScanRow>> {
    if !(beta_min > 0.0 && beta_max > beta_min && beta_max.is_finite()) {
        return domain("need 0 < beta-min < beta-max");
    }
    if steps < 2 {
        return domain("steps must be at least 2");
    }
    let span = beta_max - beta_min;
    (0..steps)
        .map(|i| {
            let beta = if i + 1 == steps {
                beta_max
            } else {
                beta_min + span * i as f64 / (steps - 1) as f64
            };
            let s = StateParams::new(beta, r, 0.0)?;
            let g = metric_closed(&s)?;
            let r_scalar = scalar_curvature_closed(beta)?.r_scalar;
            Ok(ScanRow {
                beta,
                u: u_coordinate(beta)?,
                r_scalar,
                abs_r: r_scalar.abs(),
                g_bb: g.g_bb,
                g_rr: g.g_rr,
                g_tt: g.g_tt,
            })
        })
        .collect()
}

pub fn to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let fields = [r.beta, r.u, r.r_scalar, r.abs_r, r.g_bb, r.g_rr, r.g_tt];
        let line: Vec<String> = fields.iter().map(|&x| sig9(x)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(rows: &[ScanRow]) -> String {
    let rounded: Vec<ScanRow> = rows
        .iter()
        .map(|r| ScanRow {
            beta: round_sig9(r.beta),
            u: round_sig9(r.u),
            r_scalar: round_sig9(r.r_scalar),
            abs_r: round_sig9(r.abs_r),
            g_bb: round_sig9(r.g_bb),
            g_rr: round_sig9(r.g_rr),
            g_tt: round_sig9(r.g_tt),
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&rounded).expect("rows serialize");
    s.push('\n');
    s
}
