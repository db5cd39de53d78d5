//! The four concave elliptic operator families and the derivatives of
//! the induced matrix operators F(M) = f(lambda(M)).

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
use num_traits::Float;

use crate::cone::{in_cone, p_map_raw, theta, ConeSpec, ConeStatus};
use crate::eigen::{generalized_eigen, EigenvalueVector, GeneralizedEigen};
use crate::error::CoreError;
use crate::matrix::HermitianMatrix;
use crate::symfunc::{binomial, sigma_derivs};

/// Interior margin below which derivative formulas are refused; all of
/// them degenerate on the cone boundary.
pub const INTERIOR_MARGIN: f64 = 1e-10;

/// Relative eigenvalue-gap threshold below which the Daleckii-Krein
/// divided difference is replaced by its coincidence limit.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Which concave operator f is in play.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// f = (sigma_k / C(n,k))^(1/k) on Gamma_k.
    Hessian { k: usize },
    /// f = ((sigma_k / C(n,k)) / (sigma_l / C(n,l)))^(1/(k-l)) on Gamma_k.
    HessianQuotient { k: usize, l: usize },
    /// f = Theta = sum arctan(lambda_i) on a supercritical region.
    LagrangianPhase,
    /// f = (sigma_k(P(lambda)) / C(n,k))^(1/k) on P^{-1}(Gamma_k).
    NMinusOneHessian { k: usize },
}

/// An operator together with its ambient dimension. The admissibility
/// cone is derived from the kind; for the Lagrangian phase the cone
/// threshold defaults to (n-1) pi/2 (the concavity region) and can be
/// lowered explicitly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorSpec {
    kind: OperatorKind,
    dim: usize,
    phase_threshold: f64,
}

impl OperatorSpec {
    pub fn new(kind: OperatorKind, dim: usize) -> Result<Self, CoreError> {
        let valid = match kind {
            OperatorKind::Hessian { k } => 1 <= k && k <= dim,
            OperatorKind::HessianQuotient { k, l } => 1 <= l && l < k && k <= dim,
            OperatorKind::LagrangianPhase => dim >= 1,
            OperatorKind::NMinusOneHessian { k } => 1 <= k && k <= dim && dim >= 2,
        };
        if !valid || dim == 0 {
            return Err(CoreError::InvalidSpec);
        }
        let phase_threshold = (dim as f64 - 1.0) * core::f64::consts::FRAC_PI_2;
        Ok(Self { kind, dim, phase_threshold })
    }

    /// Overrides the supercritical threshold (Lagrangian phase only).
    pub fn with_phase_threshold(mut self, threshold: f64) -> Self {
        self.phase_threshold = threshold;
        self
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn phase_threshold(&self) -> f64 {
        self.phase_threshold
    }

    /// The admissibility cone this operator is paired with.
    pub fn cone(&self) -> ConeSpec {
        match self.kind {
            OperatorKind::Hessian { k } => ConeSpec::GammaK { k },
            OperatorKind::HessianQuotient { k, .. } => ConeSpec::GammaK { k },
            OperatorKind::LagrangianPhase => ConeSpec::SupercriticalPhase {
                threshold: self.phase_threshold,
            },
            OperatorKind::NMinusOneHessian { k } => ConeSpec::PInverseGammaK { k },
        }
    }

    /// The value range f(Gamma) (open interval).
    pub fn value_range(&self) -> (f64, f64) {
        match self.kind {
            OperatorKind::LagrangianPhase => {
                let half = self.dim as f64 * core::f64::consts::FRAC_PI_2;
                (-half, half)
            }
            _ => (0.0, f64::infinity()),
        }
    }
}

/// The potential ansatz of the general problem. Only the zero ansatz is
/// implemented; applying it to any 1-form yields the zero (1,1)-form,
/// so W-classes coincide with Bott-Chern classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AnsatzW {
    #[default]
    Zero,
}

impl AnsatzW {
    pub fn apply(&self, dim: usize, _one_form: &[Complex64]) -> HermitianMatrix {
        match self {
            AnsatzW::Zero => HermitianMatrix::zeros(dim),
        }
    }
}

/// Value, gradient and Hessian of f in eigenvalue space. Works on raw
/// (not necessarily sorted) lambda so that matrix calculus can keep its
/// index pairing.
pub(crate) struct FDerivs {
    pub value: f64,
    pub grad: Vec<f64>,
    pub hess: Vec<f64>,
}

/// g = u^p with u > 0.
fn power_rule(u: f64, gu: &[f64], hu: &[f64], p: f64) -> FDerivs {
    let n = gu.len();
    let value = u.powf(p);
    let d1 = p * u.powf(p - 1.0);
    let d2 = p * (p - 1.0) * u.powf(p - 2.0);
    let grad: Vec<f64> = gu.iter().map(|&g| d1 * g).collect();
    let mut hess = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            hess[i * n + j] = d2 * gu[i] * gu[j] + d1 * hu[i * n + j];
        }
    }
    FDerivs { value, grad, hess }
}

/// h = u / v with v != 0.
fn quotient_rule(u: f64, gu: &[f64], hu: &[f64], v: f64, gv: &[f64], hv: &[f64]) -> (f64, Vec<f64>, Vec<f64>) {
    let n = gu.len();
    let h = u / v;
    let grad: Vec<f64> = (0..n).map(|i| (gu[i] - h * gv[i]) / v).collect();
    let mut hess = vec![0.0f64; n * n];
    for i in 0..n {
        for j in 0..n {
            hess[i * n + j] = (hu[i * n + j] - grad[i] * gv[j] - grad[j] * gv[i]
                - h * hv[i * n + j])
                / v;
        }
    }
    (h, grad, hess)
}

fn hessian_derivs(lambda: &[f64], k: usize, n: usize) -> FDerivs {
    let c = 1.0 / binomial(n, k);
    let (s, gs, hs) = sigma_derivs(lambda, k);
    let gu: Vec<f64> = gs.iter().map(|&g| c * g).collect();
    let hu: Vec<f64> = hs.iter().map(|&h| c * h).collect();
    power_rule(c * s, &gu, &hu, 1.0 / k as f64)
}

pub(crate) fn f_derivs(spec: &OperatorSpec, lambda: &[f64]) -> FDerivs {
    let n = spec.dim();
    debug_assert_eq!(lambda.len(), n);
    match spec.kind {
        OperatorKind::Hessian { k } => hessian_derivs(lambda, k, n),
        OperatorKind::HessianQuotient { k, l } => {
            let ck = 1.0 / binomial(n, k);
            let cl = 1.0 / binomial(n, l);
            let (sk, gk, hk) = sigma_derivs(lambda, k);
            let (sl, gl, hl) = sigma_derivs(lambda, l);
            let gu: Vec<f64> = gk.iter().map(|&g| ck * g).collect();
            let hu: Vec<f64> = hk.iter().map(|&h| ck * h).collect();
            let gv: Vec<f64> = gl.iter().map(|&g| cl * g).collect();
            let hv: Vec<f64> = hl.iter().map(|&h| cl * h).collect();
            let (h, gh, hh) = quotient_rule(ck * sk, &gu, &hu, cl * sl, &gv, &hv);
            power_rule(h, &gh, &hh, 1.0 / (k - l) as f64)
        }
        OperatorKind::LagrangianPhase => {
            let value = theta(lambda);
            let grad: Vec<f64> = lambda.iter().map(|&x| 1.0 / (1.0 + x * x)).collect();
            let mut hess = vec![0.0f64; n * n];
            for (i, &x) in lambda.iter().enumerate() {
                let d = 1.0 + x * x;
                hess[i * n + i] = -2.0 * x / (d * d);
            }
            FDerivs { value, grad, hess }
        }
        OperatorKind::NMinusOneHessian { k } => {
            let mu = p_map_raw(lambda);
            let base = hessian_derivs(&mu, k, n);
            // pull back through the symmetric linear map P
            let w = 1.0 / (n as f64 - 1.0);
            let gsum: f64 = base.grad.iter().sum();
            let grad: Vec<f64> = (0..n).map(|i| w * (gsum - base.grad[i])).collect();
            // R = H P
            let mut r = vec![0.0f64; n * n];
            for m in 0..n {
                let rowsum: f64 = (0..n).map(|l| base.hess[m * n + l]).sum();
                for j in 0..n {
                    r[m * n + j] = w * (rowsum - base.hess[m * n + j]);
                }
            }
            // hess = P R
            let mut hess = vec![0.0f64; n * n];
            for j in 0..n {
                let colsum: f64 = (0..n).map(|m| r[m * n + j]).sum();
                for i in 0..n {
                    hess[i * n + j] = w * (colsum - r[i * n + j]);
                }
            }
            FDerivs { value: base.value, grad, hess }
        }
    }
}

fn f_value(spec: &OperatorSpec, lambda: &[f64]) -> f64 {
    let n = spec.dim();
    match spec.kind {
        OperatorKind::Hessian { k } => {
            let s = crate::symfunc::elementary_all(lambda)[k];
            (s / binomial(n, k)).powf(1.0 / k as f64)
        }
        OperatorKind::HessianQuotient { k, l } => {
            let e = crate::symfunc::elementary_all(lambda);
            let num = e[k] / binomial(n, k);
            let den = e[l] / binomial(n, l);
            (num / den).powf(1.0 / (k - l) as f64)
        }
        OperatorKind::LagrangianPhase => theta(lambda),
        OperatorKind::NMinusOneHessian { k } => {
            let mu = p_map_raw(lambda);
            let s = crate::symfunc::elementary_all(&mu)[k];
            (s / binomial(n, k)).powf(1.0 / k as f64)
        }
    }
}

fn require_inside(spec: &OperatorSpec, lambda: &EigenvalueVector) -> Result<ConeStatus, CoreError> {
    let status = in_cone(&spec.cone(), lambda);
    if !status.inside {
        return Err(CoreError::NotAdmissible {
            margin: status.margin,
            violation: status.violation,
        });
    }
    Ok(status)
}

fn require_interior(spec: &OperatorSpec, lambda: &EigenvalueVector) -> Result<ConeStatus, CoreError> {
    let status = in_cone(&spec.cone(), lambda);
    if status.margin <= INTERIOR_MARGIN {
        return Err(CoreError::NotAdmissible {
            margin: status.margin,
            violation: status.violation,
        });
    }
    Ok(status)
}

/// The paper-normalized operator value f(lambda). Never evaluates
/// outside the admissibility cone; for even k the positive real root is
/// taken (well-defined since sigma_k > 0 inside Gamma_k).
pub fn evaluate_f(spec: &OperatorSpec, lambda: &EigenvalueVector) -> Result<f64, CoreError> {
    if lambda.dim() != spec.dim() {
        return Err(CoreError::DimensionMismatch {
            expected: spec.dim(),
            got: lambda.dim(),
        });
    }
    require_inside(spec, lambda)?;
    Ok(f_value(spec, lambda.values()))
}

/// Evaluates f at eigenvalues that are already known to be admissible
/// (e.g. after an admissibility scan over a whole grid). Skips the cone
/// check.
pub fn evaluate_f_unchecked(spec: &OperatorSpec, lambda: &EigenvalueVector) -> f64 {
    f_value(spec, lambda.values())
}

/// The derivative of M -> F(M) = f(lambda(M, omega)) at A, as the
/// Hermitian matrix G with d/dt F(A + tB) = tr(G B). G is positive
/// definite whenever the eigenvalues are strictly inside the cone
/// (ellipticity). Degenerate spectra are fine: the first derivative of
/// a spectral function needs no divided differences.
pub fn gradient_f(
    spec: &OperatorSpec,
    a: &HermitianMatrix,
    omega: &HermitianMatrix,
) -> Result<HermitianMatrix, CoreError> {
    let ge = generalized_eigen(a, omega)?;
    let lambda = EigenvalueVector::from_unsorted(ge.eigen.values.clone());
    require_interior(spec, &lambda)?;
    let d = f_derivs(spec, &ge.eigen.values);
    Ok(assemble_gradient(&ge, &d.grad))
}

fn assemble_gradient(ge: &GeneralizedEigen, grad: &[f64]) -> HermitianMatrix {
    let n = ge.eigen.dim();
    let mut dt = HermitianMatrix::zeros(n);
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        let vj = ge.eigen.vector(j);
        for r in 0..n {
            for s in 0..n {
                entries[r * n + s] += vj[r] * vj[s].conj() * grad[j];
            }
        }
    }
    for r in 0..n {
        for s in 0..n {
            let v = entries[r * n + s];
            if r == s {
                dt.set_sym(r, s, Complex64::new(v.re, 0.0));
            } else if r < s {
                dt.set_sym(r, s, v);
            }
        }
    }
    ge.chol.unwhiten_gradient(&dt)
}

/// Congruence of B into the whitened eigenbasis: Ktilde = V^H (L^{-1} B L^{-H}) V.
fn whitened_components(ge: &GeneralizedEigen, b: &HermitianMatrix) -> Vec<Complex64> {
    let n = ge.eigen.dim();
    let k = ge.chol.whiten(b);
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        let vi = ge.eigen.vector(i);
        for j in 0..n {
            let vj = ge.eigen.vector(j);
            let mut acc = Complex64::new(0.0, 0.0);
            for r in 0..n {
                for s in 0..n {
                    acc += vi[r].conj() * k.get(r, s) * vj[s];
                }
            }
            out[i * n + j] = acc;
        }
    }
    out
}

/// Second-order spectral-function calculus: assembles
/// d^2/dt^2 f(lambda(M + t K)) from f's eigenvalue-space derivatives
/// and the components of K in the eigenbasis of M. Divided differences
/// (grad_i - grad_j)/(lambda_i - lambda_j) switch to their coincidence
/// limit hess_ii - hess_ij inside eigenvalue clusters.
fn quadratic_form_assembly(values: &[f64], ktilde: &[Complex64], d: &FDerivs) -> f64 {
    let n = values.len();
    let scale = values.iter().fold(1.0f64, |m, &v| m.max(v.abs()));
    let mut total = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            total += d.hess[i * n + j] * ktilde[i * n + i].re * ktilde[j * n + j].re;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let gap = values[i] - values[j];
            let w = if gap.abs() <= CLUSTER_TOL * scale {
                d.hess[i * n + i] - d.hess[i * n + j]
            } else {
                (d.grad[i] - d.grad[j]) / gap
            };
            total += 2.0 * w * ktilde[i * n + j].norm_sqr();
        }
    }
    total
}

/// D^2 F(A)(B, B) = d^2/dt^2 at t=0 of F(A + t B). Non-positive for all
/// B when the eigenvalues of A are in the concavity region of the spec.
pub fn hessian_quadratic_form(
    spec: &OperatorSpec,
    a: &HermitianMatrix,
    omega: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<f64, CoreError> {
    let ge = generalized_eigen(a, omega)?;
    let lambda = EigenvalueVector::from_unsorted(ge.eigen.values.clone());
    require_interior(spec, &lambda)?;
    let d = f_derivs(spec, &ge.eigen.values);
    let ktilde = whitened_components(&ge, b);
    Ok(quadratic_form_assembly(&ge.eigen.values, &ktilde, &d))
}

/// D^2 of the transformed phase operator g = -exp(-a Theta) at A in
/// direction B. The exponent a is caller-supplied: this is the
/// concavity transform for the subcritical regime Theta >= (n-2) pi/2 +
/// delta, where the required a = a(delta) has no closed form.
pub fn transformed_phase_quadratic_form(
    exponent: f64,
    a: &HermitianMatrix,
    omega: &HermitianMatrix,
    b: &HermitianMatrix,
) -> Result<f64, CoreError> {
    let ge = generalized_eigen(a, omega)?;
    let n = ge.eigen.dim();
    let lambda = &ge.eigen.values;
    let th = theta(lambda);
    let e = (-exponent * th).exp();
    let tgrad: Vec<f64> = lambda.iter().map(|&x| 1.0 / (1.0 + x * x)).collect();
    let grad: Vec<f64> = tgrad.iter().map(|&g| exponent * e * g).collect();
    let mut hess = vec![0.0f64; n * n];
    for i in 0..n {
        let x = lambda[i];
        let di = 1.0 + x * x;
        for j in 0..n {
            let t_hess = if i == j { -2.0 * x / (di * di) } else { 0.0 };
            hess[i * n + j] = exponent * e * (t_hess - exponent * tgrad[i] * tgrad[j]);
        }
    }
    let d = FDerivs { value: -e, grad, hess };
    let ktilde = whitened_components(&ge, b);
    Ok(quadratic_form_assembly(&ge.eigen.values, &ktilde, &d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::eigenvalues;
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn ev(v: &[f64]) -> EigenvalueVector {
        EigenvalueVector::from_unsorted(v.to_vec())
    }

    fn spec(kind: OperatorKind, n: usize) -> OperatorSpec {
        OperatorSpec::new(kind, n).unwrap()
    }

    #[test]
    fn evaluate_normalized_values() {
        let s = spec(OperatorKind::Hessian { k: 2 }, 3);
        assert!((evaluate_f(&s, &ev(&[1.0, 1.0, 1.0])).unwrap() - 1.0).abs() < 1e-15);

        let p = spec(OperatorKind::LagrangianPhase, 2);
        assert!((evaluate_f(&p, &ev(&[1.0, 1.0])).unwrap() - FRAC_PI_2).abs() < 1e-15);

        let q = spec(OperatorKind::HessianQuotient { k: 2, l: 1 }, 2);
        assert!((evaluate_f(&q, &ev(&[1.0, 1.0])).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn evaluate_rejects_outside_cone() {
        let s = spec(OperatorKind::Hessian { k: 2 }, 2);
        let err = evaluate_f(&s, &ev(&[1.0, -0.5])).unwrap_err();
        assert!(matches!(err, CoreError::NotAdmissible { .. }));
    }

    #[test]
    fn invalid_parameters() {
        assert!(OperatorSpec::new(OperatorKind::Hessian { k: 3 }, 2).is_err());
        assert!(OperatorSpec::new(OperatorKind::HessianQuotient { k: 2, l: 2 }, 3).is_err());
        assert!(OperatorSpec::new(OperatorKind::NMinusOneHessian { k: 1 }, 1).is_err());
    }

    #[test]
    fn gradient_det_root_at_identity() {
        for n in 2..=3 {
            let s = spec(OperatorKind::Hessian { k: n }, n);
            let id = HermitianMatrix::identity(n);
            let g = gradient_f(&s, &id, &id).unwrap();
            for r in 0..n {
                for c in 0..n {
                    let expect = if r == c { 1.0 / n as f64 } else { 0.0 };
                    assert!((g.get(r, c) - Complex64::new(expect, 0.0)).norm() < 1e-13);
                }
            }
        }
    }

    #[test]
    fn gradient_phase_is_arctan_derivative() {
        let s = spec(OperatorKind::LagrangianPhase, 2);
        let a = HermitianMatrix::diagonal(&[1.5, 3.0]);
        let g = gradient_f(&s, &a, &HermitianMatrix::identity(2)).unwrap();
        assert!((g.get(0, 0).re - 1.0 / (1.0 + 1.5 * 1.5)).abs() < 1e-13);
        assert!((g.get(1, 1).re - 1.0 / (1.0 + 9.0)).abs() < 1e-13);
        assert!(g.get(0, 1).norm() < 1e-13);
    }

    fn fd_directional(
        s: &OperatorSpec,
        a: &HermitianMatrix,
        omega: &HermitianMatrix,
        b: &HermitianMatrix,
        h: f64,
    ) -> f64 {
        let fp = evaluate_f(s, &eigenvalues(&a.axpy(h, b), omega).unwrap()).unwrap();
        let fm = evaluate_f(s, &eigenvalues(&a.axpy(-h, b), omega).unwrap()).unwrap();
        (fp - fm) / (2.0 * h)
    }

    fn fd_second(
        s: &OperatorSpec,
        a: &HermitianMatrix,
        omega: &HermitianMatrix,
        b: &HermitianMatrix,
        h: f64,
    ) -> f64 {
        let fp = evaluate_f(s, &eigenvalues(&a.axpy(h, b), omega).unwrap()).unwrap();
        let f0 = evaluate_f(s, &eigenvalues(a, omega).unwrap()).unwrap();
        let fm = evaluate_f(s, &eigenvalues(&a.axpy(-h, b), omega).unwrap()).unwrap();
        (fp - 2.0 * f0 + fm) / (h * h)
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let omega = HermitianMatrix::from_entries(
            2,
            vec![
                Complex64::new(1.5, 0.0),
                Complex64::new(0.2, 0.1),
                Complex64::new(0.2, -0.1),
                Complex64::new(1.0, 0.0),
            ],
        )
        .unwrap();
        let a = HermitianMatrix::from_entries(
            2,
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(0.3, -0.2),
                Complex64::new(0.3, 0.2),
                Complex64::new(2.5, 0.0),
            ],
        )
        .unwrap();
        let b = HermitianMatrix::from_entries(
            2,
            vec![
                Complex64::new(0.4, 0.0),
                Complex64::new(-0.1, 0.5),
                Complex64::new(-0.1, -0.5),
                Complex64::new(0.7, 0.0),
            ],
        )
        .unwrap();
        for kind in [
            OperatorKind::Hessian { k: 1 },
            OperatorKind::Hessian { k: 2 },
            OperatorKind::HessianQuotient { k: 2, l: 1 },
            OperatorKind::LagrangianPhase,
            OperatorKind::NMinusOneHessian { k: 2 },
        ] {
            let s = spec(kind, 2).with_phase_threshold(0.0);
            let g = gradient_f(&s, &a, &omega).unwrap();
            let exact = g.inner(&b);
            let fd = fd_directional(&s, &a, &omega, &b, 1e-5);
            assert!(
                (exact - fd).abs() <= 1e-6 * exact.abs().max(1.0),
                "{kind:?}: {exact} vs {fd}"
            );
            // ellipticity: positive definite gradient
            let gev = eigenvalues(&g, &HermitianMatrix::identity(2)).unwrap();
            assert!(gev.values()[0] > 0.0, "{kind:?} gradient not PD");
        }
    }

    #[test]
    fn hessian_quadratic_form_matches_finite_differences() {
        let omega = HermitianMatrix::identity(3);
        let a = HermitianMatrix::from_entries(
            3,
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(0.3, -0.2),
                Complex64::new(0.1, 0.1),
                Complex64::new(0.3, 0.2),
                Complex64::new(2.5, 0.0),
                Complex64::new(-0.2, 0.3),
                Complex64::new(0.1, -0.1),
                Complex64::new(-0.2, -0.3),
                Complex64::new(3.0, 0.0),
            ],
        )
        .unwrap();
        let b = HermitianMatrix::from_entries(
            3,
            vec![
                Complex64::new(0.5, 0.0),
                Complex64::new(0.2, 0.4),
                Complex64::new(-0.3, 0.1),
                Complex64::new(0.2, -0.4),
                Complex64::new(-0.6, 0.0),
                Complex64::new(0.0, -0.5),
                Complex64::new(-0.3, -0.1),
                Complex64::new(0.0, 0.5),
                Complex64::new(0.9, 0.0),
            ],
        )
        .unwrap();
        for kind in [
            OperatorKind::Hessian { k: 2 },
            OperatorKind::Hessian { k: 3 },
            OperatorKind::HessianQuotient { k: 3, l: 1 },
            OperatorKind::NMinusOneHessian { k: 2 },
        ] {
            let s = spec(kind, 3);
            let exact = hessian_quadratic_form(&s, &a, &omega, &b).unwrap();
            let fd = fd_second(&s, &a, &omega, &b, 5e-4);
            assert!(
                (exact - fd).abs() <= 1e-5 * exact.abs().max(1.0),
                "{kind:?}: {exact} vs {fd}"
            );
            assert!(exact <= 1e-9, "{kind:?} not concave: {exact}");
        }
    }

    #[test]
    fn hessian_degenerate_spectrum_uses_cluster_limit() {
        // two eigenvalues coincide to 1e-9; compare against a slightly
        // split configuration
        let a = HermitianMatrix::diagonal(&[1.0, 1.0 + 1e-9, 2.0]);
        let s = spec(OperatorKind::Hessian { k: 2 }, 3);
        let omega = HermitianMatrix::identity(3);
        let b = HermitianMatrix::from_entries(
            3,
            vec![
                Complex64::new(0.3, 0.0),
                Complex64::new(0.7, 0.2),
                Complex64::new(0.1, -0.4),
                Complex64::new(0.7, -0.2),
                Complex64::new(-0.2, 0.0),
                Complex64::new(0.5, 0.0),
                Complex64::new(0.1, 0.4),
                Complex64::new(0.5, 0.0),
                Complex64::new(0.4, 0.0),
            ],
        )
        .unwrap();
        let v_clustered = hessian_quadratic_form(&s, &a, &omega, &b).unwrap();
        let a_split = HermitianMatrix::diagonal(&[1.0, 1.0 + 1e-4, 2.0]);
        let v_split = hessian_quadratic_form(&s, &a_split, &omega, &b).unwrap();
        assert!(
            (v_clustered - v_split).abs() < 1e-3 * v_split.abs().max(1.0),
            "{v_clustered} vs {v_split}"
        );
        let fd = fd_second(&s, &a, &omega, &b, 1e-3);
        assert!((v_clustered - fd).abs() <= 1e-5 * fd.abs().max(1.0));
    }

    #[test]
    fn homogeneity_kernel_direction() {
        // f 1-homogeneous: t -> f((1+t)A) affine, so D^2 F(A)(A, A) = 0
        let a = HermitianMatrix::from_entries(
            2,
            vec![
                Complex64::new(2.0, 0.0),
                Complex64::new(0.4, 0.3),
                Complex64::new(0.4, -0.3),
                Complex64::new(1.5, 0.0),
            ],
        )
        .unwrap();
        let omega = HermitianMatrix::identity(2);
        for k in 1..=2 {
            let s = spec(OperatorKind::Hessian { k }, 2);
            let v = hessian_quadratic_form(&s, &a, &omega, &a).unwrap();
            assert!(v.abs() < 1e-12, "k={k}: {v}");
        }
    }

    #[test]
    fn strict_concavity_off_the_ray() {
        let a = HermitianMatrix::diagonal(&[1.0, 2.0]);
        let b = HermitianMatrix::diagonal(&[1.0, -1.0]);
        let s = spec(OperatorKind::Hessian { k: 2 }, 2);
        let v = hessian_quadratic_form(&s, &a, &HermitianMatrix::identity(2), &b).unwrap();
        assert!(v < -1e-10);
    }

    #[test]
    fn transformed_phase_quadratic_form_checks() {
        let omega = HermitianMatrix::identity(2);
        let b = HermitianMatrix::from_entries(
            2,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(0.5, -0.7),
                Complex64::new(0.5, 0.7),
                Complex64::new(-0.9, 0.0),
            ],
        )
        .unwrap();
        let exponent = 4.0;

        // finite-difference oracle at a subcritical point (n = 2,
        // Theta between 0 and pi/2)
        let a_sub = HermitianMatrix::diagonal(&[3.0, -0.8]);
        let th = theta(&[3.0, -0.8]);
        assert!(th > 0.0 && th < FRAC_PI_2);
        let exact = transformed_phase_quadratic_form(exponent, &a_sub, &omega, &b).unwrap();
        let g = |t: f64| -> f64 {
            let lam = eigenvalues(&a_sub.axpy(t, &b), &omega).unwrap();
            -(-exponent * theta(lam.values())).exp()
        };
        let h = 5e-4;
        let fd = (g(h) - 2.0 * g(0.0) + g(-h)) / (h * h);
        assert!((exact - fd).abs() <= 1e-5 * fd.abs().max(1.0), "{exact} vs {fd}");

        // on the supercritical region the transform is concave for any
        // positive exponent (both terms are non-positive there)
        let a_super = HermitianMatrix::diagonal(&[2.0, 3.0]);
        let v = transformed_phase_quadratic_form(exponent, &a_super, &omega, &b).unwrap();
        assert!(v <= 0.0, "transform not concave at supercritical point: {v}");
    }

    #[test]
    fn value_ranges() {
        let s = spec(OperatorKind::Hessian { k: 2 }, 2);
        assert_eq!(s.value_range().0, 0.0);
        let p = spec(OperatorKind::LagrangianPhase, 2);
        assert!((p.value_range().1 - 2.0 * FRAC_PI_2).abs() < 1e-15);
        assert!((p.phase_threshold() - FRAC_PI_2).abs() < 1e-15);
        let _ = FRAC_PI_4;
    }
}
