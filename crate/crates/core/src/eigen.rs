//! Hermitian eigendecomposition by cyclic complex Jacobi sweeps.
//!
//! The matrices here are pointwise endomorphisms (n <= 4 in practice),
//! where Jacobi converges to machine precision in a handful of sweeps
//! and handles degenerate spectra without special cases.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::CoreError;
use crate::matrix::HermitianMatrix;

/// Floor for the smallest metric eigenvalue; below this the metric
/// counts as non-positive.
pub const METRIC_FLOOR: f64 = 1e-10;

const MAX_SWEEPS: usize = 64;

/// Real eigenvalues sorted ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenvalueVector {
    values: Vec<f64>,
}

impl EigenvalueVector {
    /// Sorts the input ascending.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
        Self { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }
}

impl From<Vec<f64>> for EigenvalueVector {
    fn from(values: Vec<f64>) -> Self {
        Self::from_unsorted(values)
    }
}

/// Full eigendecomposition `M = V diag(values) V^H`, values ascending,
/// eigenvector j stored as the contiguous column `vectors[j*n..(j+1)*n]`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    vectors: Vec<Complex64>,
    dim: usize,
}

impl HermitianEigen {
    pub fn vector(&self, j: usize) -> &[Complex64] {
        &self.vectors[j * self.dim..(j + 1) * self.dim]
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Eigendecomposition of a Hermitian matrix.
pub fn eigen_hermitian(m: &HermitianMatrix) -> HermitianEigen {
    let n = m.dim();
    let mut a: Vec<Complex64> = m.entries().to_vec();
    // v starts as identity, columns stored contiguously (column-major).
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        v[j * n + j] = Complex64::new(1.0, 0.0);
    }
    let scale = a.iter().map(|e| e.norm()).fold(0.0f64, f64::max).max(1.0);
    let tol = scale * 1e-15;

    for _sweep in 0..MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a[p * n + q].norm());
            }
        }
        if off <= tol {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let b = a[p * n + q];
                let babs = b.norm();
                if babs <= tol * 1e-2 {
                    continue;
                }
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let phase = b / babs;
                let tau = (aqq - app) / (2.0 * babs);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sigma = phase * s;

                // A <- G^H A G with G = [[c, sigma], [-conj(sigma), c]]
                // acting on columns/rows p and q.
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    let new_rp = arp * c - arq * sigma.conj();
                    let new_rq = arp * sigma + arq * c;
                    a[r * n + p] = new_rp;
                    a[p * n + r] = new_rp.conj();
                    a[r * n + q] = new_rq;
                    a[q * n + r] = new_rq.conj();
                }
                a[p * n + p] = Complex64::new(app - t * babs, 0.0);
                a[q * n + q] = Complex64::new(aqq + t * babs, 0.0);
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);

                // V <- V G, columns p and q (contiguous in column-major).
                for r in 0..n {
                    let vrp = v[p * n + r];
                    let vrq = v[q * n + r];
                    v[p * n + r] = vrp * c - vrq * sigma.conj();
                    v[q * n + r] = vrp * sigma + vrq * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[i * n + i]
            .re
            .partial_cmp(&a[j * n + j].re)
            .expect("eigenvalues are finite")
    });
    let values: Vec<f64> = order.iter().map(|&i| a[i * n + i].re).collect();
    let mut vectors = vec![Complex64::new(0.0, 0.0); n * n];
    for (slot, &src) in order.iter().enumerate() {
        vectors[slot * n..(slot + 1) * n].copy_from_slice(&v[src * n..(src + 1) * n]);
    }
    HermitianEigen { values, vectors, dim: n }
}

/// Generalized eigenvalues of the pencil (A, omega): the eigenvalues of
/// the omega-endomorphism `omega^{-1} A`, equivalently of the whitened
/// matrix `L^{-1} A L^{-H}` for `omega = L L^H`.
///
/// Requires omega positive definite with smallest eigenvalue above
/// [`METRIC_FLOOR`].
pub fn eigenvalues(a: &HermitianMatrix, omega: &HermitianMatrix) -> Result<EigenvalueVector, CoreError> {
    let ge = generalized_eigen(a, omega)?;
    Ok(EigenvalueVector { values: ge.eigen.values })
}

/// Whitened generalized eigendecomposition, keeping the pieces needed
/// by the derivative formulas.
pub struct GeneralizedEigen {
    pub eigen: HermitianEigen,
    pub chol: crate::matrix::CholeskyFactor,
}

pub fn generalized_eigen(
    a: &HermitianMatrix,
    omega: &HermitianMatrix,
) -> Result<GeneralizedEigen, CoreError> {
    if a.dim() != omega.dim() {
        return Err(CoreError::DimensionMismatch {
            expected: omega.dim(),
            got: a.dim(),
        });
    }
    let min = eigen_hermitian(omega).values[0];
    if min <= METRIC_FLOOR {
        return Err(CoreError::NonPositiveMetric { min_eigenvalue: min });
    }
    let chol = omega.cholesky(0.0)?;
    let b = chol.whiten(a);
    Ok(GeneralizedEigen {
        eigen: eigen_hermitian(&b),
        chol,
    })
}
