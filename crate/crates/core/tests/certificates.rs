mod common;

use katolab::certificates::{
    accretive_reweight, contraction_similarity, fan_check, gauss_legendre, sector_integral_s, spectral_angle,
    validate_certificate, CertificateKind, SectorQuadrature, ValidationTarget, TRANSFORMED_NORM_TOL,
};
use katolab::diagnostics::{cayley_transform, polynomial_bound_lower};
use katolab::factory::{Basis, SpectrumSpec};
use katolab::form::{assemble_bundle, FormPair};
use katolab::linalg::lyapunov::solve_lyapunov;
use katolab::linalg::matrix::{ComplexMatrix, HermitianMatrix, C64};
use katolab::Error;
use std::f64::consts::FRAC_PI_2;

/// Smallest eigenvalue of `Herm(Q S (I + iT))` via characteristic-polynomial
/// roots.
fn oracle_margin(fp: &FormPair, s: &ComplexMatrix) -> f64 {
    let x = &(fp.q().hermitian().matrix() * s) * &fp.form_operator();
    common::hermitian_eigenvalues(&x.hermitian_part())[0]
}

#[test]
fn returned_certificates_revalidate() {
    for seed in 0..12 {
        let fp = common::random_pair(seed, 2 + seed as usize % 3, 1.0 + seed as f64, 1e3);
        let cert = accretive_reweight(&fp, 2000, seed).unwrap();
        assert!(cert.valid);
        let v = validate_certificate(&cert, ValidationTarget::Form(&fp)).unwrap();
        assert!(v.valid && v.witness_positive);
        let m = oracle_margin(&fp, cert.witness.matrix());
        assert!(m >= -1e-8 * cert.scale, "seed {seed}: {m}");
        let ev = common::hermitian_eigenvalues(cert.witness.matrix());
        assert!(ev[0] > 0.0);
        // Polynomial roots lose about half the digits on clustered spectra.
        assert!((ev[ev.len() - 1] / ev[0] - cert.cond).abs() <= 1e-6 * cert.cond);
    }
}

#[test]
fn commuting_pairs_accept_identity() {
    for seed in 0..10 {
        let fp = katolab::factory::gen_commuting(
            6,
            seed,
            &SpectrumSpec::Uniform { lo: -3.0, hi: 3.0 },
            &SpectrumSpec::LogUniform { lo: 1e-4, hi: 1.0 },
            Basis::Random,
        )
        .unwrap();
        let cert = accretive_reweight(&fp, 100, seed).unwrap();
        assert_eq!(cert.trace.iterations, 0);
        assert!((cert.margin - fp.q().lambda_min()).abs() < 1e-10);
        assert!((cert.cond - 1.0).abs() < 1e-12);
    }
}

/// Sector integral evaluated independently: for each ray `psi`, with
/// `B = e^{i psi} A`, `int_0^inf rho e^{-rho B*} A* A e^{-rho B} drho = P1`
/// where `B* P0 + P0 B = A* A` and `B* P1 + P1 B = P0`.
fn oracle_sector_integral(fp: &FormPair, theta_prime: f64) -> ComplexMatrix {
    let a = assemble_bundle(fp).unwrap().a_op;
    let ata = &a.adjoint() * &a;
    let w = FRAC_PI_2 - theta_prime;
    let (x, wt) = gauss_legendre(64);
    let n = fp.dim();
    let mut s = ComplexMatrix::zeros(n, n);
    for (xi, wi) in x.iter().zip(&wt) {
        let b = a.scale(C64::from_polar(1.0, xi * w));
        let p0 = solve_lyapunov(&b, &ata).unwrap();
        let p1 = solve_lyapunov(&b, &p0).unwrap();
        s = &s + &p1.scale_real(wi * w);
    }
    s
}

#[test]
fn sector_integral_matches_lyapunov_oracle() {
    for seed in 0..4 {
        let fp = common::random_pair(seed, 3 + seed as usize, 0.8, 20.0);
        let a = assemble_bundle(&fp).unwrap().a_op;
        let tp = 0.5 * (spectral_angle(&a).unwrap() + FRAC_PI_2);
        let cert = sector_integral_s(&fp, &SectorQuadrature::new(tp)).unwrap();
        let oracle = oracle_sector_integral(&fp, tp);
        let oracle = oracle.scale_real(1.0 / oracle.frobenius_norm());
        let got = cert.witness.matrix().scale_real(1.0 / cert.witness.frobenius_norm());
        let err = (&got - &oracle).frobenius_norm();
        assert!(err < 1e-6, "seed {seed}: {err}");
        assert_eq!(cert.kind, CertificateKind::SectorIntegralS);
        assert!(cert.valid);
    }
}

#[test]
fn sector_integral_rejects_bad_angle() {
    let fp = common::random_pair(1, 3, 0.8, 20.0);
    let a = assemble_bundle(&fp).unwrap().a_op;
    let below = 0.5 * spectral_angle(&a).unwrap();
    assert!(matches!(sector_integral_s(&fp, &SectorQuadrature::new(below)), Err(Error::BadParameter(_))));
    let q = SectorQuadrature { radial_nodes: 8, ..SectorQuadrature::new(1.0) };
    assert!(sector_integral_s(&fp, &q).is_err());
}

#[test]
fn contraction_certificates_and_von_neumann() {
    for seed in 0..8 {
        let fp = common::random_pair(seed, 4, 2.0, 30.0);
        let c = cayley_transform(&fp).unwrap();
        let cert = contraction_similarity(&c, 2000, seed).unwrap();
        assert!(cert.valid);
        let tn = cert.transformed_norm.unwrap();
        assert!(tn <= 1.0 + TRANSFORMED_NORM_TOL);
        // Independent check of ||P^{1/2} C P^{-1/2}||.
        let (p_half, _) = common::sqrtm_eig(cert.witness.matrix());
        let x = &(&p_half * &c) * &common::inverse(&p_half);
        let top = common::hermitian_eigenvalues(&(&x.adjoint() * &x));
        assert!(top[top.len() - 1].sqrt() <= 1.0 + TRANSFORMED_NORM_TOL);
        let lb = polynomial_bound_lower(&c, 8, 100, seed).unwrap();
        assert!(lb <= cert.similarity_constant() + 1e-5);
        let v = validate_certificate(&cert, ValidationTarget::Cayley(&c)).unwrap();
        assert!(v.valid);
        assert!(validate_certificate(&cert, ValidationTarget::Form(&fp)).unwrap().valid);
    }
}

#[test]
fn contraction_of_a_contraction_is_trivial() {
    let c = ComplexMatrix::from_real_rows(&[[0.5, 0.5], [0.0, 0.25]]);
    let cert = contraction_similarity(&c, 100, 0).unwrap();
    assert_eq!(cert.cond, 1.0);
}

#[test]
fn fan_certificate_identity() {
    let fp = common::random_pair(11, 5, 1.5, 1e3);
    let cert = fan_check(&fp).unwrap();
    assert!(cert.valid);
    assert!((cert.fan_delta.unwrap() - fp.q().lambda_min()).abs() < 1e-15);
    assert!(cert.fan_residual.unwrap() <= 1e-10);
    assert!((cert.cond - fp.cond_q()).abs() <= 1e-9 * fp.cond_q());
}

#[test]
fn tampered_witnesses_fail() {
    let fp = common::random_pair(4, 3, 4.0, 200.0);
    let mut cert = accretive_reweight(&fp, 2000, 0).unwrap();
    cert.witness = HermitianMatrix::symmetrized(&cert.witness.neg());
    let v = validate_certificate(&cert, ValidationTarget::Form(&fp)).unwrap();
    assert!(!v.valid && !v.witness_positive);
    let c = cayley_transform(&fp).unwrap();
    let mut cc = contraction_similarity(&c, 2000, 0).unwrap();
    cc.witness = HermitianMatrix::from_real_diag(&[1.0, 1e6, 1.0]);
    assert!(!validate_certificate(&cc, ValidationTarget::Cayley(&c)).unwrap().valid);
}
