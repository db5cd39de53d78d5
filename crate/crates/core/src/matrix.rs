//! Dense Hermitian matrices at pointwise scale (n is the complex
//! dimension of the ambient manifold, so 1..=4 in practice).

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::error::CoreError;

/// Absolute tolerance for the Hermitian-symmetry check on construction.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// An n x n self-adjoint complex matrix, stored row-major.
///
/// Construction symmetrizes the entries (averaging `a[j][k]` with
/// `conj(a[k][j])` and dropping the imaginary part of the diagonal), so
/// the Hermitian invariant holds exactly afterwards.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Builds from row-major entries, checking hermiticity within
    /// [`HERMITIAN_TOL`] (absolute).
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self, CoreError> {
        if dim == 0 {
            return Err(CoreError::DimensionTooSmall { dim });
        }
        if entries.len() != dim * dim {
            return Err(CoreError::DimensionMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        let mut deviation = 0.0f64;
        for j in 0..dim {
            for k in j..dim {
                let d = (entries[j * dim + k] - entries[k * dim + j].conj()).norm();
                if d > deviation {
                    deviation = d;
                }
            }
        }
        if deviation > HERMITIAN_TOL {
            return Err(CoreError::NotHermitian { deviation });
        }
        let mut m = Self { dim, entries };
        m.symmetrize();
        Ok(m)
    }

    /// Zero matrix.
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Identity matrix.
    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, 1.0)
    }

    /// `s * I`.
    pub fn scaled_identity(dim: usize, s: f64) -> Self {
        let mut m = Self::zeros(dim);
        for j in 0..dim {
            m.entries[j * dim + j] = Complex64::new(s, 0.0);
        }
        m
    }

    /// Real diagonal matrix.
    pub fn diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        let mut m = Self::zeros(dim);
        for (j, &d) in diag.iter().enumerate() {
            m.entries[j * dim + j] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds from a real symmetric matrix given row-major.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self, CoreError> {
        let complex: Vec<Complex64> = entries.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_entries(dim, complex)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, j: usize, k: usize) -> Complex64 {
        self.entries[j * self.dim + k]
    }

    /// Sets entry (j, k) and mirrors the conjugate into (k, j).
    pub fn set_sym(&mut self, j: usize, k: usize, v: Complex64) {
        self.entries[j * self.dim + k] = v;
        if j == k {
            self.entries[j * self.dim + k] = Complex64::new(v.re, 0.0);
        } else {
            self.entries[k * self.dim + j] = v.conj();
        }
    }

    fn symmetrize(&mut self) {
        let n = self.dim;
        for j in 0..n {
            self.entries[j * n + j] = Complex64::new(self.entries[j * n + j].re, 0.0);
            for k in (j + 1)..n {
                let avg = (self.entries[j * n + k] + self.entries[k * n + j].conj()) * 0.5;
                self.entries[j * n + k] = avg;
                self.entries[k * n + j] = avg.conj();
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self { dim: self.dim, entries }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self { dim: self.dim, entries }
    }

    pub fn scale(&self, s: f64) -> Self {
        let entries = self.entries.iter().map(|a| a * s).collect();
        Self { dim: self.dim, entries }
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: f64, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b * s)
            .collect();
        Self { dim: self.dim, entries }
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|j| self.get(j, j).re).sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Real Frobenius inner product `tr(self * other)` of two Hermitian
    /// matrices.
    pub fn inner(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut acc = 0.0;
        for j in 0..n {
            for k in 0..n {
                acc += (self.get(j, k) * other.get(k, j)).re;
            }
        }
        acc
    }

    /// Determinant via LU with partial pivoting. Real for Hermitian
    /// input up to rounding; the real part is returned.
    pub fn det(&self) -> f64 {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut sign = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let mut piv = col;
            let mut best = a[col * n + col].norm();
            for r in (col + 1)..n {
                let v = a[r * n + col].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == 0.0 {
                return 0.0;
            }
            if piv != col {
                for k in 0..n {
                    a.swap(col * n + k, piv * n + k);
                }
                sign = -sign;
            }
            let d = a[col * n + col];
            for r in (col + 1)..n {
                let factor = a[r * n + col] / d;
                for k in col..n {
                    let sub = factor * a[col * n + k];
                    a[r * n + k] -= sub;
                }
            }
        }
        let mut det = sign;
        for j in 0..n {
            det *= a[j * n + j];
        }
        det.re
    }

    /// Inverse via Gauss-Jordan; intended for the tiny matrices this
    /// crate works with. Returns `None` if numerically singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        for col in 0..n {
            let mut piv = col;
            let mut best = a[col * n + col].norm();
            for r in (col + 1)..n {
                let v = a[r * n + col].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best < 1e-300 {
                return None;
            }
            if piv != col {
                for k in 0..n {
                    a.swap(col * n + k, piv * n + k);
                    inv.swap(col * n + k, piv * n + k);
                }
            }
            let d = a[col * n + col];
            for k in 0..n {
                a[col * n + k] /= d;
                inv[col * n + k] /= d;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                for k in 0..n {
                    let s1 = factor * a[col * n + k];
                    let s2 = factor * inv[col * n + k];
                    a[r * n + k] -= s1;
                    inv[r * n + k] -= s2;
                }
            }
        }
        let mut m = Self { dim: n, entries: inv };
        m.symmetrize();
        Some(m)
    }

    /// Cholesky factorization `self = L L^H` with positive real diagonal.
    /// Fails with `NonPositiveMetric` if a pivot drops below `floor`.
    pub fn cholesky(&self, floor: f64) -> Result<CholeskyFactor, CoreError> {
        let n = self.dim;
        let mut l = vec![Complex64::new(0.0, 0.0); n * n];
        for j in 0..n {
            for k in 0..=j {
                let mut sum = self.get(j, k);
                for m in 0..k {
                    sum -= l[j * n + m] * l[k * n + m].conj();
                }
                if j == k {
                    let d = sum.re;
                    if d <= floor {
                        return Err(CoreError::NonPositiveMetric { min_eigenvalue: d });
                    }
                    l[j * n + j] = Complex64::new(d.sqrt(), 0.0);
                } else {
                    l[j * n + k] = sum / l[k * n + k];
                }
            }
        }
        Ok(CholeskyFactor { dim: n, l })
    }
}

/// Lower-triangular Cholesky factor of a positive definite Hermitian
/// matrix.
#[derive(Clone, Debug)]
pub struct CholeskyFactor {
    dim: usize,
    l: Vec<Complex64>,
}

impl CholeskyFactor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn l(&self, j: usize, k: usize) -> Complex64 {
        self.l[j * self.dim + k]
    }

    /// Solves `L x = b` in place (forward substitution).
    pub fn forward_solve(&self, b: &mut [Complex64]) {
        let n = self.dim;
        for j in 0..n {
            let mut sum = b[j];
            for k in 0..j {
                sum -= self.l(j, k) * b[k];
            }
            b[j] = sum / self.l(j, j);
        }
    }

    /// Solves `L^H x = b` in place (back substitution).
    pub fn adjoint_solve(&self, b: &mut [Complex64]) {
        let n = self.dim;
        for j in (0..n).rev() {
            let mut sum = b[j];
            for k in (j + 1)..n {
                // (L^H)[j][k] = conj(L[k][j])
                sum -= self.l(k, j).conj() * b[k];
            }
            b[j] = sum / self.l(j, j);
        }
    }

    /// Whitening transform `B = L^{-1} A L^{-H}`; maps the generalized
    /// pencil (A, omega) to an ordinary Hermitian eigenproblem.
    pub fn whiten(&self, a: &HermitianMatrix) -> HermitianMatrix {
        let n = self.dim;
        // Y = L^{-1} A, column by column.
        let mut y = vec![Complex64::new(0.0, 0.0); n * n];
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        for c in 0..n {
            for r in 0..n {
                col[r] = a.get(r, c);
            }
            self.forward_solve(&mut col);
            for r in 0..n {
                y[r * n + c] = col[r];
            }
        }
        // B = Y L^{-H}  <=>  B^H = L^{-1} Y^H; B is Hermitian, so solve
        // columns of Y^H and read the result back directly.
        let mut b = vec![Complex64::new(0.0, 0.0); n * n];
        for c in 0..n {
            for r in 0..n {
                col[r] = y[c * n + r].conj();
            }
            self.forward_solve(&mut col);
            for r in 0..n {
                // col is column c of B^H, so B[c][r] = conj(col[r])
                b[c * n + r] = col[r].conj();
            }
        }
        let mut m = HermitianMatrix { dim: n, entries: b };
        m.symmetrize();
        m
    }

    /// Pulls a gradient expressed in whitened coordinates back to the
    /// original pairing: `G = L^{-H} D L^{-1}`.
    pub fn unwhiten_gradient(&self, d: &HermitianMatrix) -> HermitianMatrix {
        let n = self.dim;
        // X = D L^{-1}:  X^H = L^{-H} D^H, i.e. adjoint-solve columns of D^H.
        let mut x = vec![Complex64::new(0.0, 0.0); n * n];
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        for c in 0..n {
            for r in 0..n {
                col[r] = d.get(c, r).conj();
            }
            self.adjoint_solve(&mut col);
            for r in 0..n {
                // X = (X^H)^H
                x[c * n + r] = col[r].conj();
            }
        }
        // G = L^{-H} X, adjoint-solve columns of X.
        let mut g = vec![Complex64::new(0.0, 0.0); n * n];
        for c in 0..n {
            for r in 0..n {
                col[r] = x[r * n + c];
            }
            self.adjoint_solve(&mut col);
            for r in 0..n {
                g[r * n + c] = col[r];
            }
        }
        let mut m = HermitianMatrix { dim: n, entries: g };
        m.symmetrize();
        m
    }
}
