//! Elementary symmetric functions and their derivatives.

use alloc::vec;
use alloc::vec::Vec;

use crate::eigen::EigenvalueVector;
use crate::error::CoreError;

/// Binomial coefficient as f64 (exact for the small arguments used here).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// All elementary symmetric polynomials e_0..e_n of `lambda`, via the
/// characteristic-polynomial coefficient recurrence (numerically stable,
/// no division).
pub fn elementary_all(lambda: &[f64]) -> Vec<f64> {
    let n = lambda.len();
    let mut e = vec![0.0f64; n + 1];
    e[0] = 1.0;
    for (i, &x) in lambda.iter().enumerate() {
        for j in (1..=(i + 1)).rev() {
            e[j] += x * e[j - 1];
        }
    }
    e
}

/// k-th elementary symmetric polynomial; sigma_0 = 1.
pub fn sigma_k(lambda: &EigenvalueVector, k: usize) -> Result<f64, CoreError> {
    let n = lambda.dim();
    if k > n {
        return Err(CoreError::IndexOutOfRange { k, n });
    }
    Ok(elementary_all(lambda.values())[k])
}

/// Elementary symmetric polynomials of `lambda` with index `skip`
/// removed.
pub fn elementary_without(lambda: &[f64], skip: usize) -> Vec<f64> {
    let n = lambda.len();
    let mut e = vec![0.0f64; n];
    e[0] = 1.0;
    let mut count = 0usize;
    for (i, &x) in lambda.iter().enumerate() {
        if i == skip {
            continue;
        }
        count += 1;
        for j in (1..=count).rev() {
            e[j] += x * e[j - 1];
        }
    }
    e
}

fn elementary_without_two(lambda: &[f64], skip_a: usize, skip_b: usize) -> Vec<f64> {
    let n = lambda.len();
    let mut e = vec![0.0f64; n.max(1)];
    e[0] = 1.0;
    let mut count = 0usize;
    for (i, &x) in lambda.iter().enumerate() {
        if i == skip_a || i == skip_b {
            continue;
        }
        count += 1;
        for j in (1..=count).rev() {
            e[j] += x * e[j - 1];
        }
    }
    e
}

/// Value, gradient and Hessian of `sigma_k` at `lambda`:
/// d sigma_k / d lambda_i = sigma_{k-1}(lambda minus i),
/// d^2 sigma_k / d lambda_i d lambda_j = sigma_{k-2}(lambda minus i,j)
/// off the diagonal and 0 on it.
pub fn sigma_derivs(lambda: &[f64], k: usize) -> (f64, Vec<f64>, Vec<f64>) {
    let n = lambda.len();
    debug_assert!(k <= n);
    let value = elementary_all(lambda)[k];
    let mut grad = vec![0.0f64; n];
    if k >= 1 {
        for i in 0..n {
            grad[i] = elementary_without(lambda, i)[k - 1];
        }
    }
    let mut hess = vec![0.0f64; n * n];
    if k >= 2 {
        for i in 0..n {
            for j in (i + 1)..n {
                let v = elementary_without_two(lambda, i, j)[k - 2];
                hess[i * n + j] = v;
                hess[j * n + i] = v;
            }
        }
    }
    (value, grad, hess)
}
