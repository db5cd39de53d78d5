//! Numerical laboratory for concave elliptic equations of Hessian type
//! on flat complex tori.
//!
//! The crate solves the constant-right-hand-side problem
//! `F_omega(A + ddbar(psi0 + phi)) = c` for the operator families of
//! [`ktlab_core`] with a spectral Newton-Krylov method, evaluates the
//! closed-form cohomological predictions for the constant, and runs the
//! structural experiments: concavity of `c` along class segments,
//! generalized Khovanskii-Teissier inequality gaps, Brunn-Minkowski and
//! quotient-convexity gaps, and the deformed Hermitian-Yang-Mills
//! integral identity.

pub mod calculus;
pub mod class;
pub mod cohomology;
pub mod config;
pub mod field;
pub mod geometry;
pub mod gmres;
pub mod harness;
pub mod sample;
pub mod solver;
pub mod spectral;

pub use class::ClassSpec;
pub use field::{FormField, ScalarField};
pub use geometry::{GridMode, TorusGeometry};
pub use solver::{SolveOptions, SolveResult};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
