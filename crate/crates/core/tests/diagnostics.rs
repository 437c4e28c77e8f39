mod common;

use katolab::diagnostics::cayley::cayley_scalar;
use katolab::diagnostics::kato::kato_constants_direct;
use katolab::diagnostics::{
    cayley_transform, diagnose_pair, fan_form, hinfty_lower, kato_constants, numerical_range_boundary,
    polynomial_bound_lower, ritt_constants, sectoriality_profile, DiagnosticOptions, ExteriorGrid, LeftHalfPlaneGrid,
};
use katolab::form::{assemble_bundle, make_form_pair};
use katolab::linalg::matrix::{ComplexMatrix, C64};
use katolab::linalg::random::{random_positive, seeded_rng};
use katolab::linalg::spectral_norm;

#[test]
fn kappa_agrees_with_eigendecomposition_oracle() {
    for seed in 0..20 {
        let n = 2 + (seed as usize % 3);
        let fp = common::random_pair(seed, n, 0.5 + seed as f64 / 4.0, 10.0);
        let k = kato_constants(&fp).unwrap().kappa;
        let o = common::oracle_kappa(&fp);
        assert!((k - o).abs() <= 1e-9 * o, "seed {seed}: {k} vs {o}");
    }
}

#[test]
fn symmetric_forms_have_unit_kappa() {
    for (n, cond) in [(2, 1e2), (17, 1e6), (64, 1e10)] {
        let q = random_positive(&mut seeded_rng(n as u64), n, cond);
        let fp = make_form_pair(&ComplexMatrix::zeros(n, n), q.matrix(), "sym").unwrap();
        let k = kato_constants(&fp).unwrap();
        assert!((k.kappa - 1.0).abs() < 1e-8, "n={n}: {}", k.kappa);
    }
}

#[test]
fn commuting_closed_form() {
    let t = [2.0, -0.5, 0.0, 1.25];
    let fp = make_form_pair(&ComplexMatrix::from_real_diag(&t), &ComplexMatrix::from_real_diag(&[0.1, 3.0, 1.0, 20.0]), "c")
        .unwrap();
    let k = kato_constants(&fp).unwrap();
    assert!((k.kappa - common::commuting_kappa(&t)).abs() < 1e-12);
    assert!((k.c_minus - 1.0).abs() < 1e-12);
    assert!((k.c_plus - 5f64.sqrt()).abs() < 1e-12);
}

#[test]
fn graded_and_direct_routes_agree() {
    for seed in 0..5 {
        let fp = common::random_pair(seed, 12, 2.0, 1e3);
        let a = kato_constants(&fp).unwrap();
        let b = kato_constants_direct(&fp).unwrap();
        assert!((a.kappa - b.kappa).abs() < 1e-9 * a.kappa);
    }
}

#[test]
fn form_operator_is_theta_sectorial_in_h() {
    for seed in 0..10 {
        let fp = common::random_pair(seed, 8, 3.0, 1e4);
        let b = assemble_bundle(&fp).unwrap();
        let w = numerical_range_boundary(&b.l_h, fp.q(), 64).unwrap();
        assert!(w.sector_excess(fp.theta()).unwrap() <= 1e-12 * w.scale());
        assert!(w.min_real_part().unwrap() > 0.0);
    }
}

#[test]
fn left_half_plane_resolvent_bounds() {
    for seed in 0..6 {
        let fp = common::random_pair(seed, 3 + seed as usize, 2.0, 1e2);
        let a = assemble_bundle(&fp).unwrap().a_op;
        let grid = LeftHalfPlaneGrid::standard(1.0, 25, 17).unwrap();
        let p = sectoriality_profile(&a, &fp, &grid).unwrap();
        assert!(p.sup_inverse_bound <= 1.0 + 1e-9);
        assert!(p.sup_z_resolvent <= fp.form_operator_norm() + 1e-9);
        // Far from the origin z R(z, A) approaches -I.
        assert!(p.sup_z_resolvent >= 1.0 - 1e-3);
    }
}

#[test]
fn cayley_spectral_mapping() {
    for seed in 0..10 {
        let fp = common::random_pair(seed, 4, 1.5, 50.0);
        let a = assemble_bundle(&fp).unwrap().a_op;
        let c = cayley_transform(&fp).unwrap();
        let mapped: Vec<C64> = common::eigenvalues_oracle(&a).into_iter().map(cayley_scalar).collect();
        let got = common::eigenvalues_oracle(&c);
        assert!(common::multiset_distance(&mapped, &got) < 1e-8);
        assert!(got.iter().all(|z| z.norm() < 1.0));
        let f = fan_form(&fp).unwrap();
        assert!((&f - &c).frobenius_norm() <= 1e-10 * c.frobenius_norm().max(1.0));
    }
}

#[test]
fn scalar_ritt_constants() {
    let c = ComplexMatrix::from_real_diag(&[0.5]);
    let r = ritt_constants(&c, 1000, &ExteriorGrid::default()).unwrap();
    // sup |z - 1| / |z - 1/2| over |z| > 1 is 4/3, attained at z = -1.
    assert!((r.ritt_const - 4.0 / 3.0).abs() < 1e-5);
    assert!((r.power_bound - 1.0).abs() < 1e-15);
    // n 2^{-n-1} is 1/4 at n = 1 and n = 2.
    assert!((r.ritt_discrete - 0.25).abs() < 1e-15);
    assert_eq!(r.ritt_discrete_argmax, 1);
    assert!((r.spectral_radius - 0.5).abs() < 1e-15);
}

#[test]
fn identity_is_ritt_with_zero_discrete_constant() {
    let r = ritt_constants(&ComplexMatrix::identity(3), 50, &ExteriorGrid::default()).unwrap();
    assert_eq!(r.ritt_discrete, 0.0);
    assert_eq!(r.ritt_discrete_argmax, 0);
    assert!((r.ritt_const - 1.0).abs() < 1e-12);
}

#[test]
fn ritt_rejects_spectrum_outside_disk() {
    assert!(ritt_constants(&ComplexMatrix::from_real_diag(&[1.5]), 10, &ExteriorGrid::default()).is_err());
}

#[test]
fn von_neumann_for_contractions() {
    let jordan = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
    let v = polynomial_bound_lower(&jordan, 8, 200, 3).unwrap();
    assert!((1.0 - 1e-12..=1.0 + 1e-9).contains(&v), "{v}");
    let fp = common::random_pair(2, 5, 1.0, 1.0);
    // Q = I makes C a contraction.
    let c = cayley_transform(&fp).unwrap();
    assert!(spectral_norm(&c).unwrap() <= 1.0 + 1e-12);
    assert!(polynomial_bound_lower(&c, 10, 150, 1).unwrap() <= 1.0 + 1e-9);
}

#[test]
fn blaschke_products_bound_for_normal_a() {
    let fp = make_form_pair(&ComplexMatrix::from_real_diag(&[1.0, -2.0]), &ComplexMatrix::from_real_diag(&[1.0, 4.0]), "n")
        .unwrap();
    let a = assemble_bundle(&fp).unwrap().a_op;
    let v = hinfty_lower(&a, 64, 4, 9).unwrap();
    assert!(v <= 1.0 + 1e-9 && v > 0.0);
}

#[test]
fn report_fields_follow_options() {
    let fp = common::random_pair(7, 6, 1.0, 10.0);
    let r = diagnose_pair(&fp, &DiagnosticOptions::kato_only()).unwrap();
    assert!(r.ritt_const.is_none() && r.poly_bound_lb.is_none() && r.sector_profile_sup.is_none());
    let full = diagnose_pair(&fp, &DiagnosticOptions::default()).unwrap();
    assert_eq!(full.kappa, r.kappa);
    assert!(full.ritt_const.is_some() && full.hinfty_lb.is_some() && full.sector_inverse_sup.is_some());
    assert!(full.power_bound.unwrap() >= 1.0);
}
