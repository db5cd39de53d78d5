//! FFT-based calculus on the torus grid: complex Hessians of periodic
//! potentials and constant-coefficient symbol inversion.
//!
//! With unit periods, a mode m contributes e^{2 pi i m.x}, so
//! d/dx -> 2 pi i m and the complex Hessian
//! d_j dbar_k = (1/4)(dx_j dx_k + dy_j dy_k) + (i/4)(dx_j dy_k - dy_j dx_k)
//! becomes the multiplier -pi^2 conj(w_j) w_k with w_j = m_{x_j} + i m_{y_j}.
//! In Reduced mode the y-wavenumbers vanish and the multiplier is
//! -pi^2 m_j m_k.

use std::f64::consts::PI;
use std::sync::Arc;

use ktlab_core::HermitianMatrix;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::field::{FormField, ScalarField};
use crate::geometry::{GridMode, TorusGeometry};

pub struct SpectralEngine {
    geometry: Arc<TorusGeometry>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl SpectralEngine {
    pub fn new(geometry: Arc<TorusGeometry>) -> Self {
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(geometry.gridsize());
        let inv = planner.plan_fft_inverse(geometry.gridsize());
        Self { geometry, fwd, inv }
    }

    pub fn geometry(&self) -> &Arc<TorusGeometry> {
        &self.geometry
    }

    fn transform_axis(&self, data: &mut [Complex64], axis: usize, inverse: bool) {
        let n = self.geometry.gridsize();
        let stride = self.geometry.stride(axis);
        let points = self.geometry.points();
        let block = stride * n;
        let mut line = vec![Complex64::new(0.0, 0.0); n];
        let plan = if inverse { &self.inv } else { &self.fwd };
        for high in 0..(points / block) {
            for low in 0..stride {
                let start = high * block + low;
                for t in 0..n {
                    line[t] = data[start + t * stride];
                }
                plan.process(&mut line);
                for t in 0..n {
                    data[start + t * stride] = line[t];
                }
            }
        }
    }

    /// In-place forward DFT over every grid axis (unnormalized).
    pub fn forward(&self, data: &mut [Complex64]) {
        for a in 0..self.geometry.axes() {
            self.transform_axis(data, a, false);
        }
    }

    /// In-place inverse DFT over every grid axis, normalized by 1/points.
    pub fn inverse(&self, data: &mut [Complex64]) {
        for a in 0..self.geometry.axes() {
            self.transform_axis(data, a, true);
        }
        let scale = 1.0 / self.geometry.points() as f64;
        for v in data.iter_mut() {
            *v *= scale;
        }
    }

    /// First-derivative wavenumber convention: the Nyquist mode carries
    /// no odd derivative.
    fn k1(&self, idx: usize) -> f64 {
        let n = self.geometry.gridsize();
        if idx == n / 2 {
            0.0
        } else {
            self.geometry.wavenumber(idx) as f64
        }
    }

    /// Multiplier of the complex-Hessian component (j, k) at the Fourier
    /// index vector `idx`.
    fn hessian_multiplier(&self, idx: &[usize], j: usize, k: usize) -> Complex64 {
        let g = &self.geometry;
        match g.mode() {
            GridMode::Reduced => {
                if j == k {
                    let m = g.wavenumber(idx[j]) as f64;
                    Complex64::new(-PI * PI * m * m, 0.0)
                } else {
                    let mj = self.k1(idx[j]);
                    let mk = self.k1(idx[k]);
                    Complex64::new(-PI * PI * mj * mk, 0.0)
                }
            }
            GridMode::Full => {
                let n = g.dim();
                if j == k {
                    let mx = g.wavenumber(idx[j]) as f64;
                    let my = g.wavenumber(idx[n + j]) as f64;
                    Complex64::new(-PI * PI * (mx * mx + my * my), 0.0)
                } else {
                    let wj = Complex64::new(self.k1(idx[j]), self.k1(idx[n + j]));
                    let wk = Complex64::new(self.k1(idx[k]), self.k1(idx[n + k]));
                    wj.conj() * wk * (-PI * PI)
                }
            }
        }
    }

    /// Spectral complex Hessian of a periodic potential. Pointwise
    /// Hermitian; a constant potential maps to the zero field; linear in
    /// the potential by construction.
    pub fn complex_hessian(&self, phi: &ScalarField) -> FormField {
        let g = &self.geometry;
        debug_assert!(phi.geometry().as_ref() == g.as_ref());
        let points = g.points();
        let n = g.dim();
        let mut hat: Vec<Complex64> = phi
            .values()
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        self.forward(&mut hat);

        let axes = g.axes();
        let mut idx = vec![0usize; axes];
        let mut comps: Vec<Vec<Complex64>> = vec![Vec::new(); n * n];
        let mut buf = vec![Complex64::new(0.0, 0.0); points];
        for j in 0..n {
            for k in j..n {
                for p in 0..points {
                    g.indices(p, &mut idx);
                    buf[p] = hat[p] * self.hessian_multiplier(&idx, j, k);
                }
                self.inverse(&mut buf);
                if j == k {
                    // diagonal components are real
                    for v in buf.iter_mut() {
                        *v = Complex64::new(v.re, 0.0);
                    }
                    comps[j * n + j] = buf.clone();
                } else {
                    comps[j * n + k] = buf.clone();
                    comps[k * n + j] = buf.iter().map(|v| v.conj()).collect();
                }
            }
        }
        FormField::from_components(Arc::clone(g), comps).expect("components sized by construction")
    }

    /// The constant-coefficient symbol of v -> tr(Gbar H_v) at Fourier
    /// index `idx`; real, negative away from the zero mode when Gbar is
    /// positive definite.
    fn laplacian_symbol(&self, gbar: &HermitianMatrix, idx: &[usize]) -> f64 {
        let n = self.geometry.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..n {
            for k in 0..n {
                acc += gbar.get(j, k) * self.hessian_multiplier(idx, k, j);
            }
        }
        acc.re
    }

    /// Solves the constant-coefficient problem `tr(Gbar H_z) - mean(z) = w`
    /// spectrally; this is the preconditioner for the Newton step. The
    /// zero mode (the `a` slot of the bordered system) maps via -1.
    pub fn solve_constant_coefficient(&self, gbar: &HermitianMatrix, w: &[f64]) -> Vec<f64> {
        let g = &self.geometry;
        let points = g.points();
        let mut hat: Vec<Complex64> = w.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.forward(&mut hat);
        let axes = g.axes();
        let mut idx = vec![0usize; axes];
        for p in 0..points {
            g.indices(p, &mut idx);
            if idx.iter().all(|&i| i == 0) {
                hat[p] = -hat[p];
            } else {
                let s = self.laplacian_symbol(gbar, &idx);
                // the symbol can vanish only at dropped Nyquist cross
                // modes; guard rather than divide by zero
                if s.abs() > 1e-300 {
                    hat[p] /= s;
                } else {
                    hat[p] = Complex64::new(0.0, 0.0);
                }
            }
        }
        self.inverse(&mut hat);
        hat.iter().map(|v| v.re).collect()
    }
}
