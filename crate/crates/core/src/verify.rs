//! Closed form versus independent checks: Fock-basis oracle, finite
//! differences, quadrature, and structural invariants.
//!
//! Each `check_*` function returns a batch of [`VerificationCase`]s; [`run`]
//! assembles them into a [`VerificationReport`]. Case order is fixed, so
//! reports are reproducible byte for byte.

use std::sync::atomic::{AtomicUsize, Ordering};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::closedform::{fidelity_trace, thermal_fidelity};
use crate::error::{domain, Result};
use crate::estimation::find_extrema;
use crate::fockoracle::{
    density_matrix, fidelity_trace_oracle, metric_cutoff, metric_eigenbasis, squeeze_operator,
    thermal_probs, OracleConfig,
};
use crate::geometry::{
    beta_star, geodesic_length_beta, metric_closed, metric_numeric, scalar_curvature_closed,
    scalar_curvature_numeric, CURVATURE_AT_BETA_STAR, DEFAULT_STEP,
};
use crate::numeric::{integrate, integrate_to_infinity};
use crate::scan::scan;
use crate::states::{u_coordinate, StateParams};

/// Largest cutoff the fidelity grid may use.
pub const GRID_MAX_CUTOFF: usize = 512;
/// Number of oracle fidelity pairs in the full grid.
pub const FULL_GRID_PAIRS: usize = 45;
const SMALL_GRID_PAIRS: usize = 10;
/// Every n-th sampled pair is also evaluated with its states swapped.
const REVERSE_EVERY: usize = 5;
const PAIR_SEED: u64 = 0x5eed_0001;
const AXIOM_SEED: u64 = 0x5eed_0002;
const GEODESIC_SEED: u64 = 0x5eed_0003;

pub const ERRATA: [&str; 5] = [
    "fidelity-numerator: the variant 2 sinh(b1/4) sinh(b2/4) / sqrt(sqrt(Y) - 1), \
     without a square root on the numerator, gives sqrt(2) sinh(beta/4) instead of 1 \
     for identical states; the square-root form is used and certified by the thermal-specialization cases",
    "eigenbasis-metric-indices: the index pattern <u_i|drho|u_i><u_j|drho|u_i> summed \
     over i != j vanishes for diagonal perturbations; the all-pairs form \
     1/2 sum |<u_i|drho|u_j>|^2 / (P_i + P_j) is used and reproduces g_bb and g_rr",
    "u-chart-conformal-factor: with exp(-2u) = tanh(beta/8) the rr factor \
     (1 + tanh^2 u)/2 equals (1 + exp(-beta/2))/2, not (1 + sech(beta/2))/2; \
     the sech form matches the numeric Hessian and only g_bb dbeta^2 = du^2 is taken \
     from the u chart",
    "curvature-asymptote: R(beta) tends to the finite value -24 as beta -> infinity; \
     the statement that distinguishability diverges toward the pure-state limit \
     is not reproduced",
    "pure-state-distance: the beta-length from beta_lo to beta = infinity converges \
     to u(beta_lo); divergence only occurs as beta_lo -> 0",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grid {
    Small,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub grid: Grid,
    /// Tolerance for closed-form versus oracle fidelity.
    pub tol: f64,
    pub oracle: OracleConfig,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            grid: Grid::Full,
            tol: 1e-6,
            oracle: OracleConfig {
                max_cutoff: GRID_MAX_CUTOFF,
                ..OracleConfig::default()
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationCase {
    pub name: String,
    pub closed_value: f64,
    pub oracle_value: f64,
    pub abs_diff: f64,
    pub tolerance: f64,
    pub cutoff_used: Option<usize>,
    pub pass: bool,
}

impl VerificationCase {
    pub fn new(
        name: impl Into<String>,
        closed_value: f64,
        oracle_value: f64,
        tolerance: f64,
        cutoff_used: Option<usize>,
    ) -> Self {
        let abs_diff = (closed_value - oracle_value).abs();
        VerificationCase {
            name: name.into(),
            closed_value,
            oracle_value,
            abs_diff,
            tolerance,
            cutoff_used,
            pass: abs_diff <= tolerance,
        }
    }

    fn relative(name: impl Into<String>, closed: f64, other: f64, rel: f64) -> Self {
        Self::new(name, closed, other, rel * closed.abs(), None)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub cases: Vec<VerificationCase>,
    pub summary: Summary,
    pub errata: Vec<String>,
}

impl VerificationReport {
    pub fn new(cases: Vec<VerificationCase>) -> Self {
        let passed = cases.iter().filter(|c| c.pass).count();
        VerificationReport {
            summary: Summary {
                total: cases.len(),
                passed,
                failed: cases.len() - passed,
            },
            cases,
            errata: ERRATA.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

/// Runs every check; the grid size only affects the oracle fidelity batch.
pub fn run(opts: &VerifyOptions) -> Result<VerificationReport> {
    if !(opts.tol > 0.0) {
        return domain("tol must be positive");
    }
    opts.oracle.validate()?;
    let mut cases = check_fidelity(&fidelity_pairs(opts.grid)?, opts.tol, &opts.oracle)?;
    cases.extend(check_thermal_specialization()?);
    cases.extend(check_metric_hessian()?);
    cases.extend(check_eigenbasis_metric(&opts.oracle)?);
    cases.extend(check_curvature()?);
    cases.extend(check_extremum()?);
    cases.extend(check_scan_shape()?);
    cases.extend(check_metric_axioms(100)?);
    cases.extend(check_geodesic_length(10)?);
    cases.extend(check_fock_self_tests()?);
    Ok(VerificationReport::new(cases))
}

/// Distinct physical states of `{1, 2, 4} x {0, 0.3, 0.6} x {0, 0.4, 1.0}`;
/// at `r = 0` the angle is immaterial, leaving 21 states.
pub fn grid_states() -> Result<Vec<StateParams>> {
    let mut out = Vec::new();
    for &beta in &[1.0, 2.0, 4.0] {
        out.push(StateParams::thermal(beta)?);
        for &r in &[0.3, 0.6] {
            for &theta in &[0.0, 0.4, 1.0] {
                out.push(StateParams::new(beta, r, theta)?);
            }
        }
    }
    Ok(out)
}

/// Seeded sample of distinct state pairs, with every fifth pair repeated in
/// reverse order. The flag marks reversed entries; the small grid is an
/// evenly strided subset of the full one.
pub fn fidelity_pairs(grid: Grid) -> Result<Vec<(StateParams, StateParams, bool)>> {
    let states = grid_states()?;
    let n = states.len();
    let all: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let (stride, count) = match grid {
        Grid::Full => (1, FULL_GRID_PAIRS),
        Grid::Small => (FULL_GRID_PAIRS / SMALL_GRID_PAIRS, SMALL_GRID_PAIRS),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(PAIR_SEED);
    let mut picked = sample(&mut rng, all.len(), FULL_GRID_PAIRS).into_vec();
    picked.sort_unstable();
    let mut out = Vec::new();
    for (k, &idx) in picked.iter().step_by(stride).take(count).enumerate() {
        let (i, j) = all[idx];
        out.push((states[i], states[j], false));
        if k % REVERSE_EVERY == 0 {
            out.push((states[j], states[i], true));
        }
    }
    Ok(out)
}

fn state_label(s: &StateParams) -> String {
    format!("b={},r={},t={}", s.beta(), s.r(), s.theta())
}

pub fn check_fidelity(
    pairs: &[(StateParams, StateParams, bool)],
    tol: f64,
    cfg: &OracleConfig,
) -> Result<Vec<VerificationCase>> {
    let results = par_map(pairs, |(a, b, _)| {
        let closed = fidelity_trace(a, b)?.fidelity_trace;
        let oracle = fidelity_trace_oracle(a, b, cfg)?;
        Ok((closed, oracle.value, oracle.cutoff))
    });
    pairs
        .iter()
        .zip(results)
        .map(|((a, b, rev), r)| {
            let (closed, oracle, cutoff) = r?;
            let tag = if *rev { " (reversed)" } else { "" };
            Ok(VerificationCase::new(
                format!("fidelity [{} | {}]{tag}", state_label(a), state_label(b)),
                closed,
                oracle,
                tol,
                Some(cutoff),
            ))
        })
        .collect()
}

/// Thermal-only fidelity against the general formula with equal squeezing.
pub fn check_thermal_specialization() -> Result<Vec<VerificationCase>> {
    const BETAS: [f64; 5] = [0.5, 1.0, 2.0, 4.0, 8.0];
    let mut out = Vec::new();
    for &b1 in &BETAS {
        for &b2 in &BETAS {
            let general = fidelity_trace(
                &StateParams::new(b1, 0.4, 0.7)?,
                &StateParams::new(b2, 0.4, 0.7)?,
            )?;
            out.push(VerificationCase::new(
                format!("thermal specialization [b1={b1}, b2={b2}]"),
                thermal_fidelity(b1, b2)?,
                general.fidelity_trace,
                1e-12,
                None,
            ));
        }
    }
    Ok(out)
}

/// Finite-difference Hessian of `D_B^2` against the closed-form metric.
pub fn check_metric_hessian() -> Result<Vec<VerificationCase>> {
    let mut out = Vec::new();
    for &beta in &[1.0, 2.0, 4.0] {
        for &r in &[0.1, 0.3, 0.6] {
            let s = StateParams::new(beta, r, 0.4)?;
            let closed = metric_closed(&s)?.diagonal();
            let numeric = metric_numeric(&s, DEFAULT_STEP)?;
            let diag = numeric.diagonal();
            for (k, label) in ["g_bb", "g_rr", "g_tt"].iter().enumerate() {
                out.push(VerificationCase::relative(
                    format!("metric hessian {label} [b={beta}, r={r}]"),
                    closed[k],
                    diag[k],
                    1e-5,
                ));
            }
            out.push(VerificationCase::new(
                format!("metric hessian off-diagonal [b={beta}, r={r}]"),
                0.0,
                numeric.max_off_diagonal(),
                1e-6,
                None,
            ));
        }
    }
    Ok(out)
}

/// Eigenbasis quadratic form on truncated density matrices.
pub fn check_eigenbasis_metric(cfg: &OracleConfig) -> Result<Vec<VerificationCase>> {
    const H: f64 = 1e-3;
    let mut probes = Vec::new();
    for &beta in &[1.0, 2.0, 4.0] {
        probes.push((StateParams::thermal(beta)?, 0usize, 1e-4));
    }
    for &beta in &[1.0, 2.0, 4.0] {
        probes.push((StateParams::new(beta, 0.3, 0.0)?, 1usize, 1e-3));
    }
    let results = par_map(&probes, |(s, axis, _)| {
        let mut delta = [0.0; 3];
        delta[*axis] = H;
        let dim = metric_cutoff(s, cfg);
        Ok((metric_eigenbasis(s, delta, dim)? / (H * H), dim))
    });
    probes
        .iter()
        .zip(results)
        .map(|((s, axis, rel), r)| {
            let (value, dim) = r?;
            let closed = metric_closed(s)?.diagonal()[*axis];
            let label = if *axis == 0 { "g_bb" } else { "g_rr" };
            Ok(VerificationCase::new(
                format!("eigenbasis {label} [b={}, r={}]", s.beta(), s.r()),
                closed,
                value,
                rel * closed.abs(),
                Some(dim),
            ))
        })
        .collect()
}

/// Reference value of `R(2)` and its tolerance.
pub const CURVATURE_AT_TWO: (f64, f64) = (-7.24490, 0.008);

/// Numeric curvature of the closed-form metric against the closed form.
pub fn check_curvature() -> Result<Vec<VerificationCase>> {
    let mut out = Vec::new();
    for &beta in &[0.5, 1.0, 2.0, 4.0] {
        let closed = scalar_curvature_closed(beta)?.r_scalar;
        let mut probes = Vec::new();
        for &r in &[0.2, 0.8] {
            let numeric = scalar_curvature_numeric(&StateParams::new(beta, r, 0.3)?, DEFAULT_STEP)?;
            probes.push(numeric.r_scalar);
            out.push(VerificationCase::relative(
                format!("curvature [b={beta}, r={r}]"),
                closed,
                numeric.r_scalar,
                1e-3,
            ));
        }
        out.push(VerificationCase::relative(
            format!("curvature r-probe independence [b={beta}]"),
            probes[0],
            probes[1],
            1e-3,
        ));
    }
    out.push(VerificationCase::new(
        "curvature reference value [b=2]",
        CURVATURE_AT_TWO.0,
        scalar_curvature_closed(2.0)?.r_scalar,
        CURVATURE_AT_TWO.1,
        None,
    ));
    Ok(out)
}

/// Interior extremum of `R` located numerically versus its closed form.
pub fn check_extremum() -> Result<Vec<VerificationCase>> {
    let records = find_extrema(0.1, 10.0, 1e-12)?;
    let interior: Vec<_> = records.iter().filter(|r| r.kind.is_interior()).collect();
    let mut out = vec![VerificationCase::new(
        "extremum interior count on [0.1, 10]",
        1.0,
        interior.len() as f64,
        0.0,
        None,
    )];
    if let Some(rec) = interior.first() {
        let s = (rec.beta / 4.0).sinh();
        out.push(VerificationCase::new(
            "extremum location",
            beta_star(),
            rec.beta,
            1e-5,
            None,
        ));
        out.push(VerificationCase::new(
            "extremum curvature value",
            CURVATURE_AT_BETA_STAR,
            rec.r_scalar,
            1e-6,
            None,
        ));
        out.push(VerificationCase::new(
            "extremum sinh^2(beta/4)",
            3.0 / 22.0,
            s * s,
            1e-8,
            None,
        ));
    }
    Ok(out)
}

/// Unimodal shape of `R` over `[0.1, 30]` and its end values.
pub fn check_scan_shape() -> Result<Vec<VerificationCase>> {
    let rows = scan(0.1, 30.0, 2991, 0.5)?;
    let bs = beta_star();
    let violations = rows
        .windows(2)
        .filter(|w| {
            let (a, b) = (w[0], w[1]);
            if b.beta <= bs {
                b.r_scalar <= a.r_scalar
            } else if a.beta >= bs {
                b.r_scalar >= a.r_scalar
            } else {
                false
            }
        })
        .count();
    let first = rows[0].r_scalar;
    let last = rows[rows.len() - 1].r_scalar;
    Ok(vec![
        VerificationCase::new(
            "scan monotonicity violations",
            0.0,
            violations as f64,
            0.0,
            None,
        ),
        VerificationCase::new("scan R(0.1) in (-8, -7.9)", -7.95, first, 0.05, None),
        VerificationCase::new("scan R(30) in (-24, -23.9)", -23.95, last, 0.05, None),
    ])
}

fn random_state(rng: &mut ChaCha8Rng) -> Result<StateParams> {
    StateParams::new(
        rng.random_range(0.5..6.0),
        rng.random_range(0.0..1.0),
        rng.random_range(0.0..std::f64::consts::PI),
    )
}

/// Symmetry and triangle inequality for `D_B` and the Bures angle.
pub fn check_metric_axioms(triples: usize) -> Result<Vec<VerificationCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SEED);
    let mut asym: f64 = 0.0;
    let mut tri_d = 0usize;
    let mut tri_a = 0usize;
    let mut worst_d: f64 = 0.0;
    let mut worst_a: f64 = 0.0;
    for _ in 0..triples {
        let s = [
            random_state(&mut rng)?,
            random_state(&mut rng)?,
            random_state(&mut rng)?,
        ];
        let mut d = [[0.0; 3]; 3];
        let mut a = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    let f = fidelity_trace(&s[i], &s[j])?;
                    d[i][j] = f.bures_distance();
                    a[i][j] = f.bures_angle();
                }
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                asym = asym.max((d[i][j] - d[j][i]).abs());
                if i == j {
                    continue;
                }
                let k = 3 - i - j;
                let ex_d = d[i][k] - d[i][j] - d[j][k];
                let ex_a = a[i][k] - a[i][j] - a[j][k];
                worst_d = worst_d.max(ex_d);
                worst_a = worst_a.max(ex_a);
                tri_d += (ex_d > 1e-12) as usize;
                tri_a += (ex_a > 1e-12) as usize;
            }
        }
    }
    Ok(vec![
        VerificationCase::new(
            "bures distance symmetry (max deviation)",
            0.0,
            asym,
            1e-14,
            None,
        ),
        VerificationCase::new(
            "bures distance triangle violations",
            0.0,
            tri_d as f64,
            0.0,
            None,
        ),
        VerificationCase::new(
            "bures angle triangle violations",
            0.0,
            tri_a as f64,
            0.0,
            None,
        ),
        VerificationCase::new(
            "bures distance worst triangle excess",
            0.0,
            worst_d.max(0.0),
            1e-12,
            None,
        ),
        VerificationCase::new(
            "bures angle worst triangle excess",
            0.0,
            worst_a.max(0.0),
            1e-12,
            None,
        ),
    ])
}

fn sqrt_g_bb(beta: f64) -> f64 {
    1.0 / (8.0 * (beta / 4.0).sinh())
}

/// Closed-form `beta`-length against quadrature, plus the infinite limit.
pub fn check_geodesic_length(intervals: usize) -> Result<Vec<VerificationCase>> {
    let mut rng = ChaCha8Rng::seed_from_u64(GEODESIC_SEED);
    let mut out = Vec::new();
    for k in 0..intervals {
        let a: f64 = rng.random_range(0.1..20.0);
        let b: f64 = rng.random_range(0.1..20.0);
        let (lo, hi) = (a.min(b), a.max(b));
        let closed = 0.5 * ((hi / 8.0).tanh() / (lo / 8.0).tanh()).ln();
        out.push(VerificationCase::new(
            format!("beta-length quadrature #{k} [{lo:.4}, {hi:.4}]"),
            closed,
            integrate(&sqrt_g_bb, lo, hi, 1e-12),
            1e-8,
            None,
        ));
        out.push(VerificationCase::new(
            format!("beta-length closed form #{k}"),
            closed,
            geodesic_length_beta(lo, hi)?,
            1e-12,
            None,
        ));
    }
    for &lo in &[0.5, 2.0, 8.0] {
        let u = u_coordinate(lo)?;
        out.push(VerificationCase::new(
            format!("beta-length to infinity, quadrature [b_lo={lo}]"),
            u,
            integrate_to_infinity(&sqrt_g_bb, lo, 1e-13),
            1e-10,
            None,
        ));
        out.push(VerificationCase::new(
            format!("beta-length to infinity, limit [b_lo={lo}]"),
            u,
            geodesic_length_beta(lo, f64::INFINITY)?,
            1e-10,
            None,
        ));
    }
    Ok(out)
}

/// Reference vacuum amplitude of the squeeze operator at `r = 0.5`.
pub fn vacuum_amplitude_reference() -> f64 {
    1.0 / 0.5f64.cosh().sqrt()
}

/// Truncated-basis invariants that hold independently of any closed form.
pub fn check_fock_self_tests() -> Result<Vec<VerificationCase>> {
    const DIM: usize = 96;
    let mut out = Vec::new();
    for &(beta, r, theta) in &[(1.0, 0.5, 0.3), (2.0, 1.0, 1.2), (4.0, 0.3, 0.0)] {
        let s = StateParams::new(beta, r, theta)?;
        let rho = density_matrix(&s, DIM)?;
        let mut eig = rho.eigenvalues()?;
        eig.sort_by(|a, b| b.total_cmp(a));
        let probs = thermal_probs(beta, DIM)?.probs;
        let dev = eig
            .iter()
            .zip(&probs)
            .map(|(e, p)| (e - p).abs())
            .fold(0.0, f64::max);
        out.push(VerificationCase::new(
            format!("fock spectrum invariance [b={beta}, r={r}, t={theta}]"),
            0.0,
            dev,
            1e-9,
            Some(DIM),
        ));
        let thermal = density_matrix(&StateParams::thermal(beta)?, DIM)?;
        out.push(VerificationCase::new(
            format!("fock purity invariance [b={beta}, r={r}, t={theta}]"),
            thermal.purity(),
            rho.purity(),
            1e-9,
            Some(DIM),
        ));
    }
    let dim = 128;
    let amp = squeeze_operator(0.5, 0.0, dim)?[(0, 0)];
    out.push(VerificationCase::new(
        "fock vacuum amplitude <0|S(0.5, 0)|0>",
        vacuum_amplitude_reference(),
        amp.re,
        1e-9,
        Some(dim),
    ));
    out.push(VerificationCase::new(
        "fock vacuum amplitude imaginary part",
        0.0,
        amp.im,
        1e-9,
        Some(dim),
    ));
    Ok(out)
}

/// Order-preserving parallel map over scoped threads.
fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(items.len().max(1));
    let next = AtomicUsize::new(0);
    let mut tagged: Vec<(usize, R)> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|_| {
                scope.spawn(|| {
                    let mut local = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= items.len() {
                            break local;
                        }
                        local.push((i, f(&items[i])));
                    }
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    tagged.sort_by_key(|(i, _)| *i);
    tagged.into_iter().map(|(_, r)| r).collect()
}
