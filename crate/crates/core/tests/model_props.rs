use std::f64::consts::{FRAC_PI_2, TAU};

use fwm_core::selftest::{eigenvalues_2x2, pair_distance};
use fwm_core::{
    hamiltonian_single_mode, hamiltonian_two_mode, spectrum, symmetry_defect, DeltaSign,
    SymmetryMode, SystemParams, TwoModeSign,
};
use nalgebra::Matrix2;
use num_complex::Complex64;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = SystemParams> {
    (0.1f64..10.0, -20.0f64..20.0, 0.0f64..TAU)
        .prop_map(|(k, d, phi)| SystemParams::new(k, d, phi).unwrap())
}

fn schur_eigenvalues(m: &Matrix2<Complex64>) -> [Complex64; 2] {
    let e = m
        .schur()
        .eigenvalues()
        .expect("upper-triangular Schur form");
    [e[0], e[1]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn single_mode_is_anti_pt(p in params()) {
        let h = hamiltonian_single_mode(&p);
        prop_assert!(symmetry_defect(&h, SymmetryMode::AntiPt) < 1e-12 * p.kappa());
    }

    #[test]
    fn two_mode_pt_iff_cos_phi_vanishes(
        k in 0.1f64..10.0,
        d in -20.0f64..20.0,
        phi in 0.0f64..TAU,
        upper in any::<bool>(),
    ) {
        let quarter = if upper { 3.0 * FRAC_PI_2 } else { FRAC_PI_2 };
        let on = SystemParams::new(k, d, quarter).unwrap();
        prop_assert!(on.phi().cos().abs() < 1e-12);
        for sign in [TwoModeSign::Plus, TwoModeSign::Minus] {
            let h = hamiltonian_two_mode(&on, sign);
            prop_assert!(symmetry_defect(&h, SymmetryMode::Pt) < 1e-12 * k);
        }
        let off = SystemParams::new(k, d, phi).unwrap();
        let c = off.phi().cos().abs();
        if c > 0.1 {
            for sign in [TwoModeSign::Plus, TwoModeSign::Minus] {
                let h = hamiltonian_two_mode(&off, sign);
                prop_assert!(symmetry_defect(&h, SymmetryMode::Pt) > 0.1 * k * c);
            }
        }
    }

    #[test]
    fn spectrum_matches_diagonalization(p in params()) {
        let s = spectrum(&p);
        let tol = 1e-10 * p.kappa();
        let single = hamiltonian_single_mode(&p).entries;
        prop_assert!(pair_distance(eigenvalues_2x2(&single), s.lambda_single) < tol);
        prop_assert!(pair_distance(schur_eigenvalues(&single), s.lambda_single) < tol);
        for sign in [TwoModeSign::Plus, TwoModeSign::Minus] {
            let h = hamiltonian_two_mode(&p, sign).entries;
            prop_assert!(pair_distance(eigenvalues_2x2(&h), s.lambda_two_mode) < tol);
            prop_assert!(pair_distance(schur_eigenvalues(&h), s.lambda_two_mode) < tol);
        }
    }

    #[test]
    fn region_depends_on_ratio_only(
        p in params(),
        scale in 0.01f64..100.0,
        phi in 0.0f64..TAU,
    ) {
        let q = SystemParams::new(p.kappa() * scale, p.delta() * scale, phi).unwrap();
        prop_assert_eq!(p.region(), q.region());
        prop_assert_eq!(p.region(), p.with_phi(phi).unwrap().region());
    }

    #[test]
    fn squared_eigenvalues_equal_u(p in params()) {
        let s = spectrum(&p);
        let tol = 1e-12 * p.kappa().powi(2).max(p.delta().powi(2));
        let u = Complex64::new(p.u(), 0.0);
        prop_assert!((s.lambda_single[0].powi(2) - u).norm() <= tol);
        prop_assert!((s.lambda_two_mode[0].powi(2) - u).norm() <= tol);
        prop_assert!((s.lambda_single[0].powi(2) - s.lambda_two_mode[0].powi(2)).norm() <= tol);
    }

    #[test]
    fn sign_branch_flips_delta(k in 0.1f64..10.0, r in 0.0f64..3.0, phi in 0.0f64..TAU) {
        let neg = SystemParams::from_ratio(k, r, DeltaSign::Negative, phi).unwrap();
        let pos = SystemParams::from_ratio(k, r, DeltaSign::Positive, phi).unwrap();
        prop_assert_eq!(neg.delta(), -pos.delta());
        prop_assert_eq!(neg.region(), pos.region());
    }
}
