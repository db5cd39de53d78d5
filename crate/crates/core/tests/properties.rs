//! Property tests for the pointwise operator machinery: monotonicity,
//! concavity, symmetry, cone openness, ellipticity, and the strict
//! concavity kernel of the k-Hessian operators.

use ktlab_core::{
    eigenvalues, evaluate_f, gradient_f, hessian_quadratic_form, in_cone, ConeSpec,
    EigenvalueVector, HermitianMatrix, OperatorKind, OperatorSpec,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn ev(v: &[f64]) -> EigenvalueVector {
    EigenvalueVector::from_unsorted(v.to_vec())
}

fn specs_n3() -> Vec<OperatorSpec> {
    vec![
        OperatorSpec::new(OperatorKind::Hessian { k: 1 }, 3).unwrap(),
        OperatorSpec::new(OperatorKind::Hessian { k: 2 }, 3).unwrap(),
        OperatorSpec::new(OperatorKind::Hessian { k: 3 }, 3).unwrap(),
        OperatorSpec::new(OperatorKind::HessianQuotient { k: 2, l: 1 }, 3).unwrap(),
        OperatorSpec::new(OperatorKind::HessianQuotient { k: 3, l: 2 }, 3).unwrap(),
        OperatorSpec::new(OperatorKind::LagrangianPhase, 3).unwrap(),
        OperatorSpec::new(OperatorKind::NMinusOneHessian { k: 2 }, 3).unwrap(),
    ]
}

fn lambda3() -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-1.0f64..4.0, 3)
}

fn hermitian2(seed: [f64; 4]) -> HermitianMatrix {
    HermitianMatrix::from_entries(
        2,
        vec![
            Complex64::new(seed[0], 0.0),
            Complex64::new(seed[1], seed[2]),
            Complex64::new(seed[1], -seed[2]),
            Complex64::new(seed[3], 0.0),
        ],
    )
    .unwrap()
}

proptest! {
    #[test]
    fn monotone_in_each_argument(raw in lambda3(), i in 0usize..3, t in 1e-4f64..0.1) {
        for spec in specs_n3() {
            let lam = ev(&raw);
            let status = in_cone(&spec.cone(), &lam);
            if !status.inside || status.margin < 1e-6 {
                continue;
            }
            let f0 = evaluate_f(&spec, &lam).unwrap();
            let mut bumped = raw.clone();
            bumped[i] += t;
            let f1 = evaluate_f(&spec, &ev(&bumped)).unwrap();
            prop_assert!(f1 > f0, "{:?}: f({bumped:?}) = {f1} not above f({raw:?}) = {f0}", spec.kind());
        }
    }

    #[test]
    fn midpoint_concavity(a in lambda3(), b in lambda3()) {
        for spec in specs_n3() {
            let la = ev(&a);
            let lb = ev(&b);
            let ca = in_cone(&spec.cone(), &la);
            let cb = in_cone(&spec.cone(), &lb);
            if !ca.inside || !cb.inside || ca.margin < 1e-6 || cb.margin < 1e-6 {
                continue;
            }
            let mid: Vec<f64> = (0..3).map(|i| 0.5 * (a[i] + b[i])).collect();
            let lm = ev(&mid);
            if !in_cone(&spec.cone(), &lm).inside {
                continue;
            }
            let fa = evaluate_f(&spec, &la).unwrap();
            let fb = evaluate_f(&spec, &lb).unwrap();
            let fm = evaluate_f(&spec, &lm).unwrap();
            prop_assert!(fm >= 0.5 * (fa + fb) - 1e-9, "{:?} at {a:?}, {b:?}", spec.kind());
        }
    }

    #[test]
    fn permutation_symmetry(raw in lambda3()) {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0],
        ];
        for spec in specs_n3() {
            let lam = ev(&raw);
            if !in_cone(&spec.cone(), &lam).inside {
                continue;
            }
            let base = evaluate_f(&spec, &lam).unwrap();
            for p in perms {
                let permuted: Vec<f64> = p.iter().map(|&i| raw[i]).collect();
                let v = evaluate_f(&spec, &ev(&permuted)).unwrap();
                // sorting normalizes the order, so this must be bitwise equal
                prop_assert_eq!(base, v);
            }
        }
    }

    #[test]
    fn cone_openness_margin(raw in lambda3(), dir in proptest::collection::vec(-1.0f64..1.0, 3)) {
        let cones = [
            ConeSpec::GammaK { k: 2 },
            ConeSpec::GammaK { k: 3 },
            ConeSpec::PInverseGammaK { k: 2 },
            ConeSpec::SupercriticalPhase { threshold: 0.5 },
        ];
        let sup = dir.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
        prop_assume!(sup > 1e-3);
        for cone in cones {
            let lam = ev(&raw);
            let st = in_cone(&cone, &lam);
            if !st.inside || st.margin <= 0.0 {
                continue;
            }
            let step = 0.99 * st.margin / (2.0 * 3.0) / sup;
            let pert: Vec<f64> = (0..3).map(|i| raw[i] + step * dir[i]).collect();
            let st2 = in_cone(&cone, &ev(&pert));
            prop_assert!(st2.inside, "{cone:?}: margin {} lost under perturbation", st.margin);
        }
    }

    #[test]
    fn gradient_positive_definite(seed in proptest::array::uniform4(-1.0f64..1.0), shift in 0.5f64..3.0) {
        let a = hermitian2(seed).axpy(shift, &HermitianMatrix::identity(2)).scale(1.0);
        let omega = HermitianMatrix::identity(2);
        let lam = eigenvalues(&a, &omega).unwrap();
        for kind in [
            OperatorKind::Hessian { k: 2 },
            OperatorKind::HessianQuotient { k: 2, l: 1 },
            OperatorKind::LagrangianPhase,
            OperatorKind::NMinusOneHessian { k: 2 },
        ] {
            let spec = OperatorSpec::new(kind, 2).unwrap().with_phase_threshold(0.0);
            let st = in_cone(&spec.cone(), &lam);
            if st.margin < 1e-6 {
                continue;
            }
            let g = gradient_f(&spec, &a, &omega).unwrap();
            let gev = eigenvalues(&g, &omega).unwrap();
            prop_assert!(gev.values()[0] > 0.0, "{kind:?}: gradient not positive definite");
        }
    }

    #[test]
    fn hessian_kernel_characterization(
        seed_a in proptest::array::uniform4(-1.0f64..1.0),
        seed_b in proptest::array::uniform4(-1.0f64..1.0),
        mult in -2.0f64..2.0,
    ) {
        let a = hermitian2(seed_a).axpy(2.5, &HermitianMatrix::identity(2));
        let omega = HermitianMatrix::identity(2);
        let spec = OperatorSpec::new(OperatorKind::Hessian { k: 2 }, 2).unwrap();
        let lam = eigenvalues(&a, &omega).unwrap();
        prop_assume!(in_cone(&spec.cone(), &lam).margin > 1e-4);

        // proportional direction: quadratic form vanishes
        let q_prop = hessian_quadratic_form(&spec, &a, &omega, &a.scale(mult)).unwrap();
        prop_assert!(q_prop.abs() <= 1e-9, "proportional direction gave {q_prop}");

        // direction far from the ray: strictly negative
        let b = hermitian2(seed_b);
        let bnorm = b.norm();
        prop_assume!(bnorm > 1e-3);
        let b_unit = b.scale(1.0 / bnorm);
        let lstar = a.inner(&b_unit) / a.inner(&a);
        let resid = b_unit.axpy(-lstar, &a);
        prop_assume!(resid.norm() > 1e-2);
        let q = hessian_quadratic_form(&spec, &a, &omega, &b_unit).unwrap();
        prop_assert!(q < -1e-10, "off-ray direction gave {q}");
    }
}
