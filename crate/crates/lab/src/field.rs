//! Periodic fields on the torus grid: real scalar potentials and
//! Hermitian-matrix-valued (1,1)-form fields. Immutable after
//! construction.

use std::io::Write;
use std::sync::Arc;

use ktlab_core::HermitianMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::geometry::TorusGeometry;

#[derive(Debug, Error)]
pub enum FieldError {
    #[error("fields live on different geometries")]
    GeometryMismatch,
    #[error("expected {expected} fields, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("value buffer has length {got}, geometry has {expected} points")]
    BadLength { expected: usize, got: usize },
}

/// One band-limited Fourier term of a real potential:
/// `cos_amp * cos(2 pi m.x) + sin_amp * sin(2 pi m.x)`.
#[derive(Clone, Debug)]
pub struct FourierMode {
    pub mode: Vec<i64>,
    pub cos_amp: f64,
    pub sin_amp: f64,
}

/// Real periodic scalar samples on the grid.
#[derive(Clone, Debug)]
pub struct ScalarField {
    geometry: Arc<TorusGeometry>,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn from_values(geometry: Arc<TorusGeometry>, values: Vec<f64>) -> Result<Self, FieldError> {
        if values.len() != geometry.points() {
            return Err(FieldError::BadLength {
                expected: geometry.points(),
                got: values.len(),
            });
        }
        Ok(Self { geometry, values })
    }

    pub fn zeros(geometry: Arc<TorusGeometry>) -> Self {
        let n = geometry.points();
        Self { geometry, values: vec![0.0; n] }
    }

    pub fn constant(geometry: Arc<TorusGeometry>, value: f64) -> Self {
        let n = geometry.points();
        Self { geometry, values: vec![value; n] }
    }

    pub fn from_fn(geometry: Arc<TorusGeometry>, f: impl Fn(&[f64]) -> f64) -> Self {
        let mut values = vec![0.0; geometry.points()];
        let mut coords = vec![0.0; geometry.axes()];
        for (p, v) in values.iter_mut().enumerate() {
            geometry.coords(p, &mut coords);
            *v = f(&coords);
        }
        Self { geometry, values }
    }

    /// Band-limited potential from a finite Fourier coefficient list.
    /// Mode vectors are padded or truncated to the number of grid axes.
    pub fn from_modes(geometry: Arc<TorusGeometry>, modes: &[FourierMode]) -> Self {
        let axes = geometry.axes();
        Self::from_fn(geometry, |x| {
            let mut acc = 0.0;
            for term in modes {
                let mut phase = 0.0;
                for a in 0..axes {
                    let m = term.mode.get(a).copied().unwrap_or(0) as f64;
                    phase += m * x[a];
                }
                let arg = 2.0 * std::f64::consts::PI * phase;
                acc += term.cos_amp * arg.cos() + term.sin_amp * arg.sin();
            }
            acc
        })
    }

    pub fn geometry(&self) -> &Arc<TorusGeometry> {
        &self.geometry
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }

    /// Returns the field re-gauged to grid mean zero.
    pub fn to_mean_zero(&self) -> Self {
        let m = self.mean();
        self.shifted(-m)
    }

    pub fn shifted(&self, offset: f64) -> Self {
        Self {
            geometry: Arc::clone(&self.geometry),
            values: self.values.iter().map(|&v| v + offset).collect(),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            geometry: Arc::clone(&self.geometry),
            values: self.values.iter().map(|&v| v * s).collect(),
        }
    }

    /// `self + s * other`.
    pub fn axpy(&self, s: f64, other: &Self) -> Result<Self, FieldError> {
        if self.geometry.as_ref() != other.geometry.as_ref() {
            return Err(FieldError::GeometryMismatch);
        }
        Ok(Self {
            geometry: Arc::clone(&self.geometry),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + s * b)
                .collect(),
        })
    }

    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// CSV snapshot: one row per grid point, coordinates then the value.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        let axes = self.geometry.axes();
        for a in 0..axes {
            write!(w, "x{}{}", a + 1, if a + 1 == axes { "" } else { "," })?;
        }
        writeln!(w, ",value")?;
        let mut coords = vec![0.0; axes];
        for (p, v) in self.values.iter().enumerate() {
            self.geometry.coords(p, &mut coords);
            for c in coords.iter() {
                write!(w, "{:.16e},", c)?;
            }
            writeln!(w, "{:.16e}", v)?;
        }
        Ok(())
    }
}

/// Hermitian-matrix-valued field, stored as n^2 complex component
/// fields (component (j,k) at index j*n+k; the (k,j) component is kept
/// explicitly and is the pointwise conjugate).
#[derive(Clone, Debug)]
pub struct FormField {
    geometry: Arc<TorusGeometry>,
    dim: usize,
    comps: Vec<Vec<Complex64>>,
}

impl FormField {
    pub fn from_components(
        geometry: Arc<TorusGeometry>,
        comps: Vec<Vec<Complex64>>,
    ) -> Result<Self, FieldError> {
        let dim = geometry.dim();
        if comps.len() != dim * dim {
            return Err(FieldError::WrongArity { expected: dim * dim, got: comps.len() });
        }
        for c in &comps {
            if c.len() != geometry.points() {
                return Err(FieldError::BadLength { expected: geometry.points(), got: c.len() });
            }
        }
        Ok(Self { geometry, dim, comps })
    }

    /// Constant field equal to `a` at every point.
    pub fn constant(geometry: Arc<TorusGeometry>, a: &HermitianMatrix) -> Self {
        let dim = geometry.dim();
        debug_assert_eq!(a.dim(), dim);
        let points = geometry.points();
        let mut comps = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                comps.push(vec![a.get(j, k); points]);
            }
        }
        Self { geometry, dim, comps }
    }

    pub fn geometry(&self) -> &Arc<TorusGeometry> {
        &self.geometry
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn component(&self, j: usize, k: usize) -> &[Complex64] {
        &self.comps[j * self.dim + k]
    }

    /// The Hermitian matrix at a grid point.
    pub fn at(&self, point: usize) -> HermitianMatrix {
        let n = self.dim;
        let mut m = HermitianMatrix::zeros(n);
        for j in 0..n {
            m.set_sym(j, j, self.comps[j * n + j][point]);
            for k in (j + 1)..n {
                m.set_sym(j, k, self.comps[j * n + k][point]);
            }
        }
        m
    }

    pub fn add(&self, other: &Self) -> Result<Self, FieldError> {
        if self.geometry.as_ref() != other.geometry.as_ref() {
            return Err(FieldError::GeometryMismatch);
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(Self { geometry: Arc::clone(&self.geometry), dim: self.dim, comps })
    }

    /// Entrywise grid mean as a Hermitian matrix.
    pub fn mean_matrix(&self) -> HermitianMatrix {
        let n = self.dim;
        let points = self.geometry.points() as f64;
        let mut m = HermitianMatrix::zeros(n);
        for j in 0..n {
            for k in j..n {
                let s: Complex64 = self.comps[j * n + k].iter().sum();
                m.set_sym(j, k, s / points);
            }
        }
        m
    }

    /// Max over points and entries of |self - other|.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for (a, b) in self.comps.iter().zip(&other.comps) {
            for (x, y) in a.iter().zip(b) {
                worst = worst.max((x - y).norm());
            }
        }
        worst
    }

    /// CSV snapshot: coordinates, then re/im of each component.
    pub fn write_csv<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        let axes = self.geometry.axes();
        let n = self.dim;
        for a in 0..axes {
            write!(w, "x{},", a + 1)?;
        }
        for j in 0..n {
            for k in 0..n {
                write!(
                    w,
                    "re_{j}{k},im_{j}{k}{}",
                    if j + 1 == n && k + 1 == n { "" } else { "," }
                )?;
            }
        }
        writeln!(w)?;
        let mut coords = vec![0.0; axes];
        for p in 0..self.geometry.points() {
            self.geometry.coords(p, &mut coords);
            for c in coords.iter() {
                write!(w, "{:.16e},", c)?;
            }
            for j in 0..n {
                for k in 0..n {
                    let v = self.comps[j * n + k][p];
                    write!(
                        w,
                        "{:.16e},{:.16e}{}",
                        v.re,
                        v.im,
                        if j + 1 == n && k + 1 == n { "" } else { "," }
                    )?;
                }
            }
            writeln!(w)?;
        }
        Ok(())
    }
}
