//! Witness `S = integral of (A e^{zA})* (A e^{zA})` over a sector where the
//! semigroup decays, with `A = Q (I + iT)^{-1}`.
//!
//! The integration region is the reflected sector
//! `z = -rho e^{i psi}`, `|psi| <= pi/2 - theta'`, with area measure
//! `rho drho dpsi`. Radially the substitution `rho = e^s` and the composite
//! trapezoid rule are used; angularly Gauss–Legendre nodes.

use super::reweight::finish_kind;
use super::{Certificate, CertificateKind, SolverTrace};
use crate::error::{Error, Result};
use crate::form::{assemble_bundle, FormPair};
use crate::linalg::expm::expm;
use crate::linalg::matrix::{ComplexMatrix, HermitianMatrix, C64};
use crate::linalg::schur::complex_schur;
use std::f64::consts::FRAC_PI_2;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SectorQuadrature {
    pub theta_prime: f64,
    pub radial_nodes: usize,
    pub angular_nodes: usize,
}

impl SectorQuadrature {
    pub fn new(theta_prime: f64) -> Self {
        Self { theta_prime, radial_nodes: 96, angular_nodes: 16 }
    }
}

/// Growth factor between the full and half radial rules above which the
/// quadrature is declared divergent.
const DIVERGENCE_RATIO: f64 = 1e3;

/// Gauss–Legendre nodes and weights on `[-1, 1]` (Newton on `P_n`).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pn1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pn1) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Largest `|arg lambda|` over the spectrum of `A`.
pub fn spectral_angle(a: &ComplexMatrix) -> Result<f64> {
    Ok(complex_schur(a)?.eigenvalues().iter().map(|l| l.arg().abs()).fold(0.0, f64::max))
}

pub fn sector_integral_s(fp: &FormPair, quad: &SectorQuadrature) -> Result<Certificate> {
    if quad.radial_nodes < 32 || quad.angular_nodes < 16 {
        return Err(Error::BadParameter(format!(
            "sector quadrature needs >= 32 radial and >= 16 angular nodes, got {} and {}",
            quad.radial_nodes, quad.angular_nodes
        )));
    }
    let a = assemble_bundle(fp)?.a_op;
    let schur = complex_schur(&a)?;
    let eig = schur.eigenvalues();
    let theta_a = eig.iter().map(|l| l.arg().abs()).fold(0.0, f64::max);
    let tp = quad.theta_prime;
    if !(tp > theta_a && tp < FRAC_PI_2) {
        return Err(Error::BadParameter(format!(
            "theta' = {tp} must lie strictly between the spectral angle {theta_a} and pi/2"
        )));
    }
    let half_width = FRAC_PI_2 - tp;
    // Decay rate of e^{-rho e^{i psi} A} on the slowest ray.
    let decay = [-half_width, half_width]
        .iter()
        .flat_map(|&psi| eig.iter().map(move |&l| (C64::from_polar(1.0, psi) * l).re))
        .fold(f64::INFINITY, f64::min);
    let norm_a = schur.r.frobenius_norm();
    let rho_min = 1e-8 / norm_a;
    let rho_max = (1e16f64).ln() / (2.0 * decay);
    let (s0, s1) = (rho_min.ln(), rho_max.ln());
    let nr = quad.radial_nodes;
    let h = (s1 - s0) / (nr - 1) as f64;
    let (gx, gw) = gauss_legendre(quad.angular_nodes);

    // Work in the Schur basis: (A e^{zA})* (A e^{zA}) = U (R e^{zR})* (R e^{zR}) U*.
    let r = &schur.r;
    let n = r.rows();
    let mut full = ComplexMatrix::zeros(n, n);
    let mut half = ComplexMatrix::zeros(n, n);
    for (&x, &wa) in gx.iter().zip(&gw) {
        let psi = x * half_width;
        let wpsi = wa * half_width;
        for j in 0..nr {
            let rho = (s0 + h * j as f64).exp();
            let z = -C64::from_polar(rho, psi);
            let e = expm(&r.scale(z))?;
            let re = r.upper_triangular_matmul(&e);
            let term = &re.adjoint() * &re;
            let trap = if j == 0 || j == nr - 1 { 0.5 } else { 1.0 };
            let w = wpsi * h * rho * rho;
            full = &full + &term.scale_real(w * trap);
            if j % 2 == 0 {
                let trap_half = if j == 0 || j + 2 > nr - 1 { 0.5 } else { 1.0 };
                half = &half + &term.scale_real(2.0 * w * trap_half);
            }
        }
    }
    if !full.is_finite() || !half.is_finite() {
        return Err(Error::QuadratureDivergence { growth: f64::INFINITY });
    }
    let (nf, nh) = (full.frobenius_norm(), half.frobenius_norm());
    let growth = if nh > 0.0 { nf / nh } else { f64::INFINITY };
    if !(growth <= DIVERGENCE_RATIO && growth >= 1.0 / DIVERGENCE_RATIO) {
        return Err(Error::QuadratureDivergence { growth });
    }
    let s = HermitianMatrix::symmetrized(&schur.from_basis(&full));
    let scaled = HermitianMatrix::symmetrized(&s.scale_real(1.0 / nf.max(f64::MIN_POSITIVE)));
    let trace = SolverTrace { iterations: nr * quad.angular_nodes, final_objective: growth, best_t: Vec::new() };
    finish_kind(fp, scaled, trace, CertificateKind::SectorIntegralS)
}
