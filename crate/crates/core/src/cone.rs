//! Admissibility cones and membership tests.

use alloc::vec::Vec;
use core::fmt;

use num_traits::Float;

use crate::eigen::EigenvalueVector;
use crate::error::CoreError;
use crate::symfunc::{binomial, elementary_all};

/// The admissibility cone of an operator.
///
/// `GammaK(k)` is the Garding cone { sigma_1 > 0, ..., sigma_k > 0 };
/// `SupercriticalPhase` is the closed region { Theta(lambda) >= threshold };
/// `PInverseGammaK(k)` pulls Gamma_k back through the eigenvalue map
/// mu_i = (sum_{j != i} lambda_j) / (n-1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConeSpec {
    GammaK { k: usize },
    SupercriticalPhase { threshold: f64 },
    PInverseGammaK { k: usize },
}

/// Which defining inequality failed, for diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConeViolation {
    Sigma { l: usize, value: f64 },
    Phase { theta: f64, threshold: f64 },
}

impl fmt::Display for ConeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeViolation::Sigma { l, value } => write!(f, "sigma_{l} = {value:.6e} <= 0"),
            ConeViolation::Phase { theta, threshold } => {
                write!(f, "Theta = {theta:.6e} below threshold {threshold:.6e}")
            }
        }
    }
}

/// Membership report: `inside` plus a signed margin.
///
/// The margin is scaled so that openness is quantitative: whenever
/// `margin = m > 0`, every perturbation of lambda with sup-norm below
/// `m / (2n)` stays inside the cone. For `GammaK` this means the raw
/// sigma_l values are divided by `C(n-1, l-1) * (2(1+|lambda|_inf))^(l-1)`
/// (a bound on the gradient of sigma_l on the relevant ball); for the
/// phase cone the margin is `Theta(lambda) - threshold` unchanged.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConeStatus {
    pub inside: bool,
    pub margin: f64,
    pub violation: Option<ConeViolation>,
}

/// Lagrangian phase Theta(lambda) = sum_i arctan(lambda_i), principal
/// branches summed; no unwrapping is needed pointwise.
pub fn theta(lambda: &[f64]) -> f64 {
    lambda.iter().map(|&x| x.atan()).sum()
}

fn gamma_k_status(lambda: &[f64], k: usize) -> ConeStatus {
    let n = lambda.len();
    let e = elementary_all(lambda);
    let sup = lambda.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    let base = 2.0 * (1.0 + sup);
    let mut margin = f64::infinity();
    let mut violation = None;
    let mut worst = f64::infinity();
    let kk = k.min(n);
    let mut scale = 1.0f64; // (2(1+sup))^(l-1) accumulated
    for l in 1..=kk {
        let normalized = e[l] / (binomial(n - 1, l - 1) * scale);
        if normalized < margin {
            margin = normalized;
        }
        if e[l] <= 0.0 && e[l] < worst {
            worst = e[l];
            violation = Some(ConeViolation::Sigma { l, value: e[l] });
        }
        scale *= base;
    }
    ConeStatus {
        inside: margin > 0.0,
        margin,
        violation,
    }
}

/// Membership with signed margin. `GammaK` and `PInverseGammaK` are
/// open (strict inequalities); `SupercriticalPhase` is closed, matching
/// the region { Theta >= threshold } on which the phase operator is
/// concave.
pub fn in_cone(cone: &ConeSpec, lambda: &EigenvalueVector) -> ConeStatus {
    match *cone {
        ConeSpec::GammaK { k } => gamma_k_status(lambda.values(), k),
        ConeSpec::SupercriticalPhase { threshold } => {
            let th = theta(lambda.values());
            let margin = th - threshold;
            ConeStatus {
                inside: margin >= 0.0,
                margin,
                violation: if margin >= 0.0 {
                    None
                } else {
                    Some(ConeViolation::Phase { theta: th, threshold })
                },
            }
        }
        ConeSpec::PInverseGammaK { k } => gamma_k_status(&p_map_raw(lambda.values()), k),
    }
}

/// The linear eigenvalue transform of the (n-1, n-1) Hessian operators,
/// mu_i = (sum_{j != i} lambda_j) / (n-1), without re-sorting.
pub fn p_map_raw(lambda: &[f64]) -> Vec<f64> {
    let n = lambda.len();
    debug_assert!(n >= 2);
    let total: f64 = lambda.iter().sum();
    lambda.iter().map(|&x| (total - x) / (n as f64 - 1.0)).collect()
}

/// P-map on sorted eigenvalue vectors; re-sorts the output.
pub fn p_map(lambda: &EigenvalueVector) -> Result<EigenvalueVector, CoreError> {
    if lambda.dim() < 2 {
        return Err(CoreError::DimensionTooSmall { dim: lambda.dim() });
    }
    Ok(EigenvalueVector::from_unsorted(p_map_raw(lambda.values())))
}
