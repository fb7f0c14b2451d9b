use nalgebra::Complex;

use super::linalg::{hermitian_eig, hermiticity_defect, matrix_exponential, symmetrize, CMatrix};
use crate::error::{domain, Result};
use crate::states::StateParams;

/// Largest squeeze the oracle accepts; truncation error grows like `e^{2r}`.
pub const MAX_ORACLE_R: f64 = 2.0;

/// Truncated thermal distribution `p_n = (1 - e^{-beta/2}) e^{-beta n / 2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalProbs {
    pub probs: Vec<f64>,
    /// Exact probability beyond the cutoff, `e^{-beta D / 2}`.
    pub tail_mass: f64,
}

pub fn thermal_probs(beta: f64, dim: usize) -> Result<ThermalProbs> {
    if beta.is_nan() || beta <= 0.0 {
        return domain("beta must be positive");
    }
    if dim == 0 {
        return domain("cutoff must be at least 1");
    }
    let p0 = -(-beta / 2.0).exp_m1();
    let probs = (0..dim)
        .map(|n| p0 * (-beta * n as f64 / 2.0).exp())
        .collect();
    Ok(ThermalProbs {
        probs,
        tail_mass: (-beta * dim as f64 / 2.0).exp(),
    })
}

/// Smallest cutoff whose thermal tail `e^{-beta D / 2}` is below `tail_tol`.
pub fn thermal_cutoff(beta: f64, tail_tol: f64) -> usize {
    (2.0 * (1.0 / tail_tol).ln() / beta).floor() as usize + 1
}

/// Truncated generator `zeta K+ - conj(zeta) K-` with `zeta = r e^{2i theta}`
/// and `K+ = a^dag^2 / 2`.
pub fn squeeze_generator(r: f64, theta: f64, dim: usize) -> Result<CMatrix> {
    if dim < 4 {
        return domain("squeeze generator needs a cutoff of at least 4");
    }
    if !r.is_finite() || !theta.is_finite() {
        return domain("squeeze parameters must be finite");
    }
    let zeta = Complex::from_polar(r, 2.0 * theta);
    let mut g = CMatrix::zeros(dim, dim);
    for n in 0..dim - 2 {
        // <n+2| K+ |n> = sqrt((n+1)(n+2)) / 2
        let k = 0.5 * (((n + 1) * (n + 2)) as f64).sqrt();
        g[(n + 2, n)] = zeta * k;
        g[(n, n + 2)] = -zeta.conj() * k;
    }
    Ok(g)
}

/// `exp` of the truncated squeeze generator.
///
/// The generator only couples `n` to `n +- 2`, so the even and odd Fock
/// sectors are exponentiated separately.
pub fn squeeze_operator(r: f64, theta: f64, dim: usize) -> Result<CMatrix> {
    let g = squeeze_generator(r, theta, dim)?;
    let mut out = CMatrix::zeros(dim, dim);
    for parity in 0..2 {
        let idx: Vec<usize> = (parity..dim).step_by(2).collect();
        let block = CMatrix::from_fn(idx.len(), idx.len(), |i, j| g[(idx[i], idx[j])]);
        let e = matrix_exponential(&block)?;
        for (i, &a) in idx.iter().enumerate() {
            for (j, &b) in idx.iter().enumerate() {
                out[(a, b)] = e[(i, j)];
            }
        }
    }
    Ok(out)
}

/// Truncated density matrix of a squeezed thermal state.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    pub dim: usize,
    pub entries: CMatrix,
    /// `S diag(sqrt(p))`, so that `entries = factor factor^dag` before symmetrization.
    pub factor: CMatrix,
    /// Thermal probability beyond the cutoff.
    pub tail_mass: f64,
    /// Hermiticity defect before symmetrization.
    pub hermiticity_defect: f64,
}

impl DensityMatrix {
    pub fn trace(&self) -> f64 {
        self.entries.diagonal().iter().map(|z| z.re).sum()
    }

    /// `Tr rho^2`.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(&self.entries)?.values)
    }
}

/// `rho = S diag(p) S^dag` on a `dim`-dimensional Fock space.
pub fn density_matrix(s: &StateParams, dim: usize) -> Result<DensityMatrix> {
    if s.r() > MAX_ORACLE_R {
        return domain(format!(
            "r = {} exceeds the oracle limit {MAX_ORACLE_R}",
            s.r()
        ));
    }
    let thermal = thermal_probs(s.beta(), dim)?;
    let mut half = if s.r() == 0.0 {
        CMatrix::identity(dim, dim)
    } else {
        squeeze_operator(s.r(), s.theta(), dim)?
    };
    for (j, p) in thermal.probs.iter().enumerate() {
        half.column_mut(j).scale_mut(p.sqrt());
    }
    let rho = &half * half.adjoint();
    let hermiticity_defect = hermiticity_defect(&rho);
    Ok(DensityMatrix {
        dim,
        entries: symmetrize(&rho),
        factor: half,
        tail_mass: thermal.tail_mass,
        hermiticity_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fockoracle::linalg::frobenius;

    fn st(beta: f64, r: f64, theta: f64) -> StateParams {
        StateParams::new(beta, r, theta).unwrap()
    }

    #[test]
    fn thermal_probs_examples() {
        let t = thermal_probs(2.0, 64).unwrap();
        assert!((t.probs[0] - 0.6321205588285577).abs() < 1e-15);
        let z = crate::states::normalization_z(2.0).unwrap();
        assert!((t.probs[0] - z * (-0.5f64).exp()).abs() < 1e-15);
        assert!((t.tail_mass - (-64f64).exp()).abs() < 1e-40);
        let sum: f64 = t.probs.iter().sum();
        assert!((sum + t.tail_mass - 1.0).abs() < 1e-15);

        let t = thermal_probs(200.0, 8).unwrap();
        assert_eq!(t.probs[0], 1.0);
        assert!(t.probs[1] < 1e-40);
        assert!(thermal_probs(0.0, 8).is_err());
    }

    #[test]
    fn thermal_cutoff_policy() {
        let d = thermal_cutoff(1.0, 1e-12);
        assert!((-(d as f64) / 2.0).exp() < 1e-12);
        assert!((-((d - 1) as f64) / 2.0).exp() >= 1e-12);
    }

    #[test]
    fn generator_structure() {
        let g = squeeze_generator(0.7, 0.3, 12).unwrap();
        assert!(frobenius(&(&g + g.adjoint())) < 1e-15);
        let zeta = Complex::from_polar(0.7, 0.6);
        assert!((g[(2, 0)] - zeta * 0.5 * 2f64.sqrt()).norm() < 1e-15);
        let zero = squeeze_generator(0.0, 1.0, 8).unwrap();
        assert_eq!(zero, CMatrix::zeros(8, 8));
        assert!(squeeze_generator(0.1, 0.0, 3).is_err());
        // K+ element on its own
        let kp = squeeze_generator(1.0, 0.0, 8).unwrap();
        assert!((kp[(2, 0)].re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn vacuum_overlap_anchor() {
        let s = squeeze_operator(0.5, 0.0, 64).unwrap();
        let expected = 1.0 / 0.5f64.cosh().sqrt();
        assert!((s[(0, 0)].re - expected).abs() < 1e-9);
        assert!(s[(0, 0)].im.abs() < 1e-12);
        assert!((expected - 0.9417106158).abs() < 1e-10);
    }

    #[test]
    fn squeeze_is_unitary_on_interior_block() {
        let (r, dim) = (0.8, 80);
        let s = squeeze_operator(r, 0.4, dim).unwrap();
        let u = s.adjoint() * &s;
        let interior = dim - 2 * (10.0 * r).ceil() as usize;
        let mut worst = 0.0f64;
        for i in 0..interior / 2 {
            for j in 0..interior / 2 {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((u[(i, j)] - Complex::new(target, 0.0)).norm());
            }
        }
        assert!(worst < 1e-10, "{worst}");
    }

    #[test]
    fn thermal_density_is_diagonal() {
        let rho = density_matrix(&st(2.0, 0.0, 0.0), 16).unwrap();
        let t = thermal_probs(2.0, 16).unwrap();
        for i in 0..16 {
            for j in 0..16 {
                let expect = if i == j { t.probs[i] } else { 0.0 };
                assert!((rho.entries[(i, j)].re - expect).abs() < 1e-16);
            }
        }
    }

    #[test]
    fn purity_and_spectrum() {
        let rho = density_matrix(&st(2.0, 0.5, 0.0), 96).unwrap();
        let expected = (1.0 - (-1f64).exp()).powi(2) / (1.0 - (-2f64).exp());
        assert!((expected - 0.5f64.tanh()).abs() < 1e-15);
        assert!((rho.purity() - expected).abs() < 1e-9);
        assert!((rho.trace() - 1.0).abs() < 1e-12);
        assert!(rho.hermiticity_defect < 1e-14);

        let mut eig = rho.eigenvalues().unwrap();
        eig.reverse();
        let t = thermal_probs(2.0, 96).unwrap();
        for (a, b) in eig.iter().zip(&t.probs) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn oracle_rejects_large_squeeze() {
        assert!(density_matrix(&st(2.0, 2.5, 0.0), 16).is_err());
    }
}
