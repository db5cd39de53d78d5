//! The pointwise data of cohomological-type operators: a map
//! Zhat: R -> C* and an angle phi_f with Zhat(x) in R_{>0} e^{i phi_f(x)},
//! phi_f injective on the operator's value range.

use num_complex::Complex64;
use num_traits::Float;

use crate::error::CoreError;
use crate::operator::{OperatorKind, OperatorSpec};

/// `(-i)^n` without rounding.
fn minus_i_pow(n: usize) -> Complex64 {
    match n % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, -1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, 1.0),
    }
}

/// The phase prefactor `-(-i)^n` of the Lagrangian phase functional.
pub fn phase_prefactor(n: usize) -> Complex64 {
    -minus_i_pow(n)
}

/// Returns (Zhat(x), phi_f(x)) for the operator at value x.
///
/// Hessian(k) and the (n-1,n-1) k-Hessian use Zhat(x) = 1 + i x^k with
/// phi_f(x) = arctan(x^k); the quotient uses the same shape with
/// exponent k - l; the Lagrangian phase uses Zhat(x) = -(-i)^n e^{ix}
/// with phi_f(x) = x - (n-2) pi/2.
///
/// Fails with `OutOfRange` when x is outside the closure of f(Gamma).
pub fn zhat_and_phi(spec: &OperatorSpec, x: f64) -> Result<(Complex64, f64), CoreError> {
    let n = spec.dim();
    let root_type = |p: usize| -> Result<(Complex64, f64), CoreError> {
        if x < 0.0 {
            return Err(CoreError::OutOfRange { value: x });
        }
        let xp = x.powi(p as i32);
        Ok((Complex64::new(1.0, xp), xp.atan()))
    };
    match spec.kind() {
        OperatorKind::Hessian { k } => root_type(k),
        OperatorKind::NMinusOneHessian { k } => root_type(k),
        OperatorKind::HessianQuotient { k, l } => root_type(k - l),
        OperatorKind::LagrangianPhase => {
            let half = n as f64 * core::f64::consts::FRAC_PI_2;
            if x.abs() > half {
                return Err(CoreError::OutOfRange { value: x });
            }
            let z = phase_prefactor(n) * Complex64::new(0.0, x).exp();
            let phi = x - (n as f64 - 2.0) * core::f64::consts::FRAC_PI_2;
            Ok((z, phi))
        }
    }
}
