//! Statistical-distance (Bures) geometry of the `(beta, r, theta)` chart.
//!
//! The metric is diagonal:
//!
//! ```text
//! ds^2 = dbeta^2 / (64 sinh^2(beta/4)) + (1 + sech(beta/2)) / 2 * (dr^2 + sinh^2(2r) dtheta^2)
//! ```
//!
//! `r = 0` is a polar-type coordinate degeneracy of the `(r, theta)` block,
//! not a curvature singularity.

mod curvature;
mod metric;

pub use curvature::{
    beta_star, scalar_curvature_closed, scalar_curvature_from_metric, scalar_curvature_numeric,
    CurvatureValue, CURVATURE_AT_BETA_STAR, CURVATURE_LIMIT_HIGH_BETA, CURVATURE_LIMIT_LOW_BETA,
};
pub use metric::{
    geodesic_length_beta, metric_closed, metric_numeric, MetricTensor, NumericMetric, DEFAULT_STEP,
};
