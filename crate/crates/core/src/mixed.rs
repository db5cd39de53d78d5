//! Mixed discriminants via inclusion-exclusion polarization of the
//! determinant. This is the pointwise kernel of wedge integrals of
//! (1,1)-forms.

use alloc::vec::Vec;

use crate::error::CoreError;
use crate::matrix::HermitianMatrix;

/// Precomputed inclusion-exclusion table for dimension n: for each
/// nonempty subset S of {0..n-1}, the sign (-1)^(n-|S|) and the member
/// indices. Reused across grid points when integrating fields.
pub struct PolarizationTable {
    n: usize,
    terms: Vec<(f64, Vec<usize>)>,
    inv_factorial: f64,
}

impl PolarizationTable {
    pub fn new(n: usize) -> Self {
        let mut terms = Vec::new();
        for mask in 1usize..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let sign = if (n - members.len()) % 2 == 0 { 1.0 } else { -1.0 };
            terms.push((sign, members));
        }
        let mut fact = 1.0f64;
        for i in 2..=n {
            fact *= i as f64;
        }
        Self { n, terms, inv_factorial: 1.0 / fact }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// D(A_1, ..., A_n), normalized so D(A, ..., A) = det A.
    pub fn evaluate(&self, mats: &[&HermitianMatrix]) -> f64 {
        debug_assert_eq!(mats.len(), self.n);
        let mut acc = 0.0f64;
        for (sign, members) in &self.terms {
            let mut sum = HermitianMatrix::zeros(self.n);
            for &i in members {
                sum = sum.add(mats[i]);
            }
            acc += sign * sum.det();
        }
        acc * self.inv_factorial
    }
}

/// D(A_1, ..., A_n) for n Hermitian n x n matrices, normalized so that
/// D(A, ..., A) = det(A). Symmetric and multilinear in its arguments;
/// positive on positive definite inputs.
pub fn mixed_discriminant(mats: &[&HermitianMatrix]) -> Result<f64, CoreError> {
    if mats.is_empty() {
        return Err(CoreError::DimensionTooSmall { dim: 0 });
    }
    let n = mats[0].dim();
    if mats.len() != n {
        return Err(CoreError::DimensionMismatch { expected: n, got: mats.len() });
    }
    for m in mats {
        if m.dim() != n {
            return Err(CoreError::DimensionMismatch { expected: n, got: m.dim() });
        }
    }
    Ok(PolarizationTable::new(n).evaluate(mats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn equal_arguments_give_determinant() {
        let a = HermitianMatrix::diagonal(&[2.0, 5.0]);
        let d = mixed_discriminant(&[&a, &a]).unwrap();
        assert!((d - 10.0).abs() < 1e-13);
    }

    #[test]
    fn polarization_example() {
        let i = HermitianMatrix::identity(2);
        let b = HermitianMatrix::diagonal(&[1.0, 2.0]);
        // D = (det(I+B) - det I - det B)/2 = (6 - 1 - 2)/2
        let d = mixed_discriminant(&[&i, &b]).unwrap();
        assert!((d - 1.5).abs() < 1e-13);
    }

    #[test]
    fn multilinear_and_symmetric() {
        let a = HermitianMatrix::from_real(2, &[1.0, 0.3, 0.3, 2.0]).unwrap();
        let b = HermitianMatrix::from_real(2, &[0.5, -0.1, -0.1, 1.5]).unwrap();
        let c = HermitianMatrix::from_real(2, &[2.0, 0.7, 0.7, 0.9]).unwrap();
        let d_ab = mixed_discriminant(&[&a, &b]).unwrap();
        let d_ba = mixed_discriminant(&[&b, &a]).unwrap();
        assert!((d_ab - d_ba).abs() < 1e-13);
        let combo = b.axpy(2.5, &c);
        let lhs = mixed_discriminant(&[&a, &combo]).unwrap();
        let rhs = d_ab + 2.5 * mixed_discriminant(&[&a, &c]).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn positivity_on_positive_definite_triples() {
        let a = HermitianMatrix::from_real(3, &[2.0, 0.1, 0.0, 0.1, 1.5, 0.2, 0.0, 0.2, 1.0]).unwrap();
        let b = HermitianMatrix::from_real(3, &[1.0, -0.2, 0.1, -0.2, 2.0, 0.0, 0.1, 0.0, 0.8]).unwrap();
        let c = HermitianMatrix::identity(3);
        let d = mixed_discriminant(&[&a, &b, &c]).unwrap();
        assert!(d > 0.0);
        let arity = mixed_discriminant(&[&a, &b]);
        assert!(matches!(arity, Err(CoreError::DimensionMismatch { .. })));
        let _ = vec![0u8];
    }
}
