//! Pointwise machinery for concave elliptic operators of Hessian type.
//!
//! Everything in this crate is matrix-level: eigenvalues of Hermitian
//! endomorphisms, elementary symmetric functions, the four operator
//! families (k-Hessian, Hessian quotient, Lagrangian phase, (n-1,n-1)
//! k-Hessian), their admissibility cones, first and second derivatives
//! of the induced matrix operators, and mixed discriminants. There is
//! no geometry here; a companion crate puts these operators on flat
//! complex tori.
//!
//! All values are immutable after construction and the functions are
//! pure, so everything is safe to share across threads.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cone;
pub mod eigen;
pub mod error;
pub mod matrix;
pub mod mixed;
pub mod operator;
pub mod symfunc;
pub mod zhat;

pub use cone::{in_cone, p_map, ConeSpec, ConeStatus, ConeViolation};
pub use eigen::{eigen_hermitian, eigenvalues, EigenvalueVector, HermitianEigen};
pub use error::CoreError;
pub use matrix::{CholeskyFactor, HermitianMatrix};
pub use mixed::mixed_discriminant;
pub use operator::{
    evaluate_f, gradient_f, hessian_quadratic_form, transformed_phase_quadratic_form,
    AnsatzW, OperatorKind, OperatorSpec,
};
pub use zhat::zhat_and_phi;

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
