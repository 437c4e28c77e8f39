//! Witnesses `P > 0` with `C* P C <= P`, so that `P^{1/2} C P^{-1/2}` is a
//! contraction and `C` is similar to one with constant `sqrt(cond P)`.

use super::slab::{bisect, normalize_witness};
use super::reweight::T_MAX;
use super::{Certificate, CertificateKind, SolverTrace, VALID_REL_TOL};
use crate::diagnostics::cayley::{cayley_transform, fan_form};
use crate::error::{Error, Result};
use crate::form::FormPair;
use crate::linalg::lyapunov::solve_stein;
use crate::linalg::matrix::{ComplexMatrix, HermitianMatrix, C64};
use crate::linalg::norms::{hermitian_norm, spectral_norm};
use crate::linalg::{complex_schur, hermitian_eig, PositiveMatrix};

/// Slack on `||P^{1/2} C P^{-1/2}|| <= 1`.
pub const TRANSFORMED_NORM_TOL: f64 = 1e-7;

/// Relative bound on `||cayley - fan||_F` before the two forms are
/// considered inconsistent.
pub const FAN_RESIDUAL_TOL: f64 = 1e-10;

pub(crate) struct ContractionCheck {
    pub margin: f64,
    pub scale: f64,
    pub positive: bool,
    pub cond: f64,
    pub transformed_norm: Option<f64>,
}

impl ContractionCheck {
    pub fn valid(&self) -> bool {
        self.positive
            && self.margin >= -VALID_REL_TOL * self.scale
            && self.transformed_norm.is_some_and(|t| t <= 1.0 + TRANSFORMED_NORM_TOL)
    }
}

fn stein_slack(c: &ComplexMatrix, p: &HermitianMatrix) -> HermitianMatrix {
    let cpc = &(&c.adjoint() * p.matrix()) * c;
    HermitianMatrix::symmetrized(&(p.matrix() - &cpc))
}

fn stein_margin(c: &ComplexMatrix, p: &HermitianMatrix) -> Result<(f64, Vec<C64>)> {
    let e = hermitian_eig(&stein_slack(c, p))?;
    Ok((e.min(), e.eigenvector(0)))
}

pub(crate) fn check_contraction(c: &ComplexMatrix, p: &HermitianMatrix) -> Result<ContractionCheck> {
    let e = hermitian_eig(p)?;
    let positive = e.min() > 0.0;
    let (margin, _) = stein_margin(c, p)?;
    let cn = spectral_norm(c)?;
    let scale = hermitian_norm(p)? * cn.powi(2).max(1.0);
    let (cond, transformed_norm) = if positive {
        let half = e.apply(f64::sqrt);
        let inv_half = e.apply(|v| 1.0 / v.sqrt());
        let x = &(half.matrix() * c) * inv_half.matrix();
        (e.max() / e.min(), Some(spectral_norm(&x)?))
    } else {
        (f64::INFINITY, None)
    };
    Ok(ContractionCheck { margin, scale, positive, cond, transformed_norm })
}

fn build(c: &ComplexMatrix, witness: HermitianMatrix, trace: SolverTrace, kind: CertificateKind) -> Result<Certificate> {
    let chk = check_contraction(c, &witness)?;
    Ok(Certificate {
        kind,
        valid: chk.valid(),
        margin: chk.margin,
        cond: chk.cond,
        scale: chk.scale,
        witness,
        theta_certified: None,
        trace,
        fan_delta: None,
        fan_residual: None,
        transformed_norm: chk.transformed_norm,
    })
}

/// Search for `P` with `I <= P <= tI` and `C* P C <= P`, minimizing `t`.
/// `P = I` is returned when `C` is already a contraction; otherwise the
/// Stein solution `P - C* P C = I` seeds the bisection when `rho(C) < 1`.
pub fn contraction_similarity(c: &ComplexMatrix, max_iter: usize, seed: u64) -> Result<Certificate> {
    if !c.is_square() {
        return Err(Error::DimensionMismatch(format!("expected a square matrix, got {}x{}", c.rows(), c.cols())));
    }
    let n = c.rows();
    let id = HermitianMatrix::identity(n);
    if spectral_norm(c)? <= 1.0 {
        let m = stein_margin(c, &id)?.0;
        let cert = build(c, id, SolverTrace { iterations: 0, final_objective: m, best_t: vec![1.0] }, CertificateKind::ContractionSimilarity)?;
        if cert.valid {
            return Ok(cert);
        }
    }
    let rho = complex_schur(c)?.eigenvalues().iter().map(|l| l.norm()).fold(0.0, f64::max);
    let known = if rho < 1.0 {
        solve_stein(c, &ComplexMatrix::identity(n))
            .ok()
            .and_then(|p| PositiveMatrix::new(HermitianMatrix::symmetrized(&p)).ok())
            .map(|p| normalize_witness(p.hermitian()))
            .transpose()?
    } else {
        None
    };
    let eval = |p: &HermitianMatrix| stein_margin(c, p);
    let grad = |v: &[C64]| -> ComplexMatrix {
        let cv = c.mul_vec(v);
        ComplexMatrix::from_fn(n, n, |i, j| v[i] * v[j].conj() - cv[i] * cv[j].conj())
    };
    let out = bisect(&eval, &grad, known.clone(), T_MAX, max_iter, seed, n)?;
    let mut witness = out.witness;
    if !(out.margin >= 0.0) {
        if let Some((k, _)) = known {
            witness = k;
        }
    }
    let m = stein_margin(c, &witness)?.0;
    let trace = SolverTrace { iterations: out.iterations, final_objective: m, best_t: out.best_t };
    let cert = build(c, witness, trace, CertificateKind::ContractionSimilarity)?;
    if !cert.valid {
        return Err(Error::NoCertificateFound { best_margin: cert.margin, scale: cert.scale });
    }
    Ok(cert)
}

/// Witness for the Cayley transform of a pair: `C` is a contraction in the
/// inner product of `Q^{-1}`, so `P = lambda_max(Q) Q^{-1}` works, with
/// `delta = lambda_min(Q)`. Also checks that the two closed forms of the
/// transform agree.
pub fn fan_check(fp: &FormPair) -> Result<Certificate> {
    let c = cayley_transform(fp)?;
    let f = fan_form(fp)?;
    let residual = (&c - &f).frobenius_norm();
    let bound = FAN_RESIDUAL_TOL * c.frobenius_norm().max(1.0);
    if !(residual <= bound) {
        return Err(Error::InvariantBreach(format!(
            "Cayley transform and its fan form differ by {residual:.3e} (bound {bound:.3e})"
        )));
    }
    let p = HermitianMatrix::symmetrized(&fp.q().inverse().scale_real(fp.q().lambda_max()));
    let m = stein_margin(&c, &p)?.0;
    let mut cert = build(&c, p, SolverTrace { iterations: 0, final_objective: m, best_t: Vec::new() }, CertificateKind::FanForm)?;
    cert.fan_delta = Some(fp.q().lambda_min());
    cert.fan_residual = Some(residual);
    Ok(cert)
}
