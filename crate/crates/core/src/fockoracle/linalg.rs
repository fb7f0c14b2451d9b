use nalgebra::{Complex, DMatrix};

use crate::error::{domain, Error, Result};

pub type CMatrix = DMatrix<Complex<f64>>;

/// Largest `|M_ij - conj(M_ji)|`.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut out = 0.0f64;
    for i in 0..n {
        for j in i..n {
            out = out.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    out
}

pub(crate) fn symmetrize(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * Complex::new(0.5, 0.0)
}

/// Dense matrix exponential (scaling and squaring with a Padé core).
pub fn matrix_exponential(m: &CMatrix) -> Result<CMatrix> {
    if !m.is_square() {
        return domain("matrix exponential needs a square matrix");
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return domain("matrix exponential input has non-finite entries");
    }
    let out = m.clone().exp();
    if out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Convergence(
            "matrix exponential overflowed during squaring".into(),
        ));
    }
    Ok(out)
}

/// Spectral decomposition `M = V diag(values) V^dag`, values ascending.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEig {
    pub fn reconstruct(&self) -> CMatrix {
        let mut scaled = self.vectors.clone();
        for (j, &v) in self.values.iter().enumerate() {
            scaled.column_mut(j).scale_mut(v);
        }
        &scaled * self.vectors.adjoint()
    }
}

pub fn hermitian_eig(m: &CMatrix) -> Result<HermitianEig> {
    if !m.is_square() {
        return domain("eigendecomposition needs a square matrix");
    }
    let n = m.nrows();
    let scale = m.iter().fold(0.0f64, |a, z| a.max(z.norm())).max(1.0);
    let defect = hermiticity_defect(m);
    if defect > 1e-10 * scale {
        return domain(format!("matrix is not Hermitian (defect {defect:e})"));
    }
    let eig = symmetrize(m)
        .try_symmetric_eigen(f64::EPSILON, 1000 * n.max(1))
        .ok_or_else(|| Error::Convergence("Hermitian eigensolver did not converge".into()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = CMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(HermitianEig { values, vectors })
}

/// Positive square root `V diag(sqrt(l)) V^dag`; eigenvalues in
/// `[-clamp, 0)` are treated as zero.
pub fn sqrt_psd(m: &CMatrix, clamp: f64) -> Result<CMatrix> {
    let eig = hermitian_eig(m)?;
    if let Some(&lo) = eig.values.first() {
        if lo < -clamp {
            return Err(Error::NegativeEigenvalue {
                value: lo,
                threshold: clamp,
            });
        }
    }
    let roots = HermitianEig {
        values: eig.values.iter().map(|&v| v.max(0.0).sqrt()).collect(),
        vectors: eig.vectors,
    };
    Ok(symmetrize(&roots.reconstruct()))
}

#[cfg(test)]
pub(crate) fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
