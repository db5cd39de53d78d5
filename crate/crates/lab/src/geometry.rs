//! The flat complex torus X = C^n / (Z^n + i Z^n) with a constant
//! background metric, discretized on a periodic grid.
//!
//! Periods are 1 in every real coordinate and the total volume is
//! normalized to 1, so integrals are grid means. In `Reduced` mode the
//! fields depend only on the real parts x_1..x_n (an n-dimensional
//! grid); `Full` mode grids all 2n real coordinates and is supported
//! for n <= 2 only (memory).

use ktlab_core::{eigen_hermitian, CholeskyFactor, HermitianMatrix};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridMode {
    Reduced,
    Full,
}

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("grid size {0} must be a power of two >= 4")]
    BadGridSize(usize),
    #[error("background metric must be positive definite (min eigenvalue {0:e})")]
    NonPositiveMetric(f64),
    #[error("metric dimension {got} does not match n = {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Full mode needs n <= 2 (got n = {0})")]
    FullModeTooLarge(usize),
    #[error("dimension must be >= 1")]
    ZeroDimension,
}

/// Grid + background Kahler form. Immutable once built; fields hold it
/// behind `Arc`.
#[derive(Debug)]
pub struct TorusGeometry {
    dim: usize,
    mode: GridMode,
    gridsize: usize,
    omega: HermitianMatrix,
    omega_chol: CholeskyFactor,
    omega_min_eig: f64,
    axes: usize,
    points: usize,
}

impl PartialEq for TorusGeometry {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.mode == other.mode
            && self.gridsize == other.gridsize
            && self.omega == other.omega
    }
}

impl TorusGeometry {
    pub fn new(
        dim: usize,
        mode: GridMode,
        gridsize: usize,
        omega: HermitianMatrix,
    ) -> Result<Self, GeometryError> {
        if dim == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        if gridsize < 4 || !gridsize.is_power_of_two() {
            return Err(GeometryError::BadGridSize(gridsize));
        }
        if omega.dim() != dim {
            return Err(GeometryError::DimensionMismatch { expected: dim, got: omega.dim() });
        }
        if mode == GridMode::Full && dim > 2 {
            return Err(GeometryError::FullModeTooLarge(dim));
        }
        let min_eig = eigen_hermitian(&omega).values[0];
        if min_eig <= 1e-10 {
            return Err(GeometryError::NonPositiveMetric(min_eig));
        }
        let omega_chol = omega
            .cholesky(0.0)
            .map_err(|_| GeometryError::NonPositiveMetric(min_eig))?;
        let axes = match mode {
            GridMode::Reduced => dim,
            GridMode::Full => 2 * dim,
        };
        let points = gridsize.pow(axes as u32);
        Ok(Self {
            dim,
            mode,
            gridsize,
            omega,
            omega_chol,
            omega_min_eig: min_eig,
            axes,
            points,
        })
    }

    /// Reduced-mode geometry with the identity metric.
    pub fn reduced(dim: usize, gridsize: usize) -> Result<Self, GeometryError> {
        Self::new(dim, GridMode::Reduced, gridsize, HermitianMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> GridMode {
        self.mode
    }

    pub fn gridsize(&self) -> usize {
        self.gridsize
    }

    pub fn omega(&self) -> &HermitianMatrix {
        &self.omega
    }

    pub fn omega_chol(&self) -> &CholeskyFactor {
        &self.omega_chol
    }

    pub fn omega_min_eig(&self) -> f64 {
        self.omega_min_eig
    }

    /// Number of grid axes: n in Reduced mode, 2n in Full mode.
    pub fn axes(&self) -> usize {
        self.axes
    }

    /// Total number of grid points.
    pub fn points(&self) -> usize {
        self.points
    }

    /// Row-major stride of an axis (the last axis is contiguous).
    pub fn stride(&self, axis: usize) -> usize {
        self.gridsize.pow((self.axes - 1 - axis) as u32)
    }

    /// Integer grid indices of a flat point index.
    pub fn indices(&self, mut point: usize, out: &mut [usize]) {
        for a in (0..self.axes).rev() {
            out[a] = point % self.gridsize;
            point /= self.gridsize;
        }
    }

    /// Coordinates of a flat point index, in [0, 1)^axes.
    pub fn coords(&self, point: usize, out: &mut [f64]) {
        let mut idx = vec![0usize; self.axes];
        self.indices(point, &mut idx);
        for a in 0..self.axes {
            out[a] = idx[a] as f64 / self.gridsize as f64;
        }
    }

    /// Signed integer wavenumber of a grid index along one axis.
    pub fn wavenumber(&self, idx: usize) -> i64 {
        let n = self.gridsize as i64;
        let i = idx as i64;
        if i <= n / 2 {
            i
        } else {
            i - n
        }
    }
}
