use super::slab::{bisect, normalize_witness};
use super::{Certificate, CertificateKind, SolverTrace, VALID_REL_TOL};
use crate::error::{Error, Result};
use crate::form::{assemble_bundle, FormPair};
use crate::linalg::lyapunov::solve_lyapunov;
use crate::linalg::matrix::{ComplexMatrix, HermitianMatrix, C64};
use crate::linalg::norms::hermitian_norm;
use crate::linalg::{hermitian_eig, PositiveMatrix};
use std::f64::consts::FRAC_PI_2;

/// Largest condition number the reweighting search bisects over.
pub const T_MAX: f64 = 1e8;

/// `W(S) = (Q S (I + iT) + (I - iT) S Q) / 2`.
pub(crate) fn w_of(fp: &FormPair, s: &HermitianMatrix) -> HermitianMatrix {
    let x = &(fp.q().hermitian().matrix() * s.matrix()) * &fp.form_operator();
    HermitianMatrix::symmetrized(&x)
}

/// `lambda_min(W(S))` and the matching eigenvector.
pub fn reweight_margin(fp: &FormPair, s: &HermitianMatrix) -> Result<(f64, Vec<C64>)> {
    let e = hermitian_eig(&w_of(fp, s))?;
    Ok((e.min(), e.eigenvector(0)))
}

pub(crate) fn form_scale(fp: &FormPair, s: &HermitianMatrix) -> Result<f64> {
    Ok(fp.q().lambda_max() * fp.form_operator_norm() * hermitian_norm(s)?)
}

/// Smallest `theta` in `[0, pi/2]` with `<Q S (I + iT) u, u>` in the closed
/// sector of half-angle `theta` for all `u`. `None` when even the half-plane
/// condition fails.
///
/// With `X = Q S (I + iT) = R + iH` and `R` positive definite this is
/// `arctan` of the spectral radius of `R^{-1/2} H R^{-1/2}`; when `R` is
/// close to singular the sector test is bisected instead (to `1e-10` rad).
pub fn theta_for_witness(fp: &FormPair, s: &HermitianMatrix) -> Result<Option<f64>> {
    let x = &(fp.q().hermitian().matrix() * s.matrix()) * &fp.form_operator();
    let re = HermitianMatrix::symmetrized(&x);
    let re_eig = hermitian_eig(&re)?;
    if re_eig.min() > 1e-10 * re_eig.abs_max().max(f64::MIN_POSITIVE) {
        let im = HermitianMatrix::symmetrized(&x.scale(C64::new(0.0, -1.0)));
        let r = re_eig.apply(|v| 1.0 / v.sqrt());
        let g = HermitianMatrix::symmetrized(&(&(r.matrix() * im.matrix()) * r.matrix()));
        return Ok(Some(hermitian_eig(&g)?.abs_max().atan()));
    }
    let ok = |theta: f64| -> Result<bool> {
        for sign in [1.0, -1.0] {
            let rot = x.scale(C64::from_polar(1.0, sign * (FRAC_PI_2 - theta)));
            if hermitian_eig(&HermitianMatrix::symmetrized(&rot))?.min() < 0.0 {
                return Ok(false);
            }
        }
        Ok(true)
    };
    if !ok(FRAC_PI_2)? {
        return Ok(None);
    }
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    if ok(0.0)? {
        return Ok(Some(0.0));
    }
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if ok(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(Some(hi))
}

/// Known feasible witnesses: `S = Q^{-1}` (for which `W = I`) and
/// `S = Q^{-1} Y Q^{-1}` with `Y L_H + L_H* Y = 2I` (for which `W = I` as
/// well). Both are normalized to `lambda_min = 1`; the better conditioned
/// one is returned.
fn feasible_candidates(fp: &FormPair) -> Result<(HermitianMatrix, f64)> {
    let q_inv = fp.q().inverse();
    let mut best = normalize_witness(&q_inv)?;
    if let Ok(bundle) = assemble_bundle(fp) {
        let two = ComplexMatrix::identity(fp.dim()).scale_real(2.0);
        if let Ok(y) = solve_lyapunov(&bundle.l_h, &two) {
            let s = HermitianMatrix::symmetrized(&(&(q_inv.matrix() * &y) * q_inv.matrix()));
            if let Ok(p) = PositiveMatrix::new(s) {
                let cand = normalize_witness(p.hermitian())?;
                if cand.1 < best.1 && reweight_margin(fp, &cand.0)?.0 >= 0.0 {
                    best = cand;
                }
            }
        }
    }
    Ok(best)
}

/// Search for `S` with `I <= S <= tI` and `Re <Q S (I + iT) u, u> >= 0`,
/// minimizing `t` by bisection on `log t` with projected-subgradient
/// feasibility steps. `S = I` is tried first.
pub fn accretive_reweight(fp: &FormPair, max_iter: usize, seed: u64) -> Result<Certificate> {
    let n = fp.dim();
    let id = HermitianMatrix::identity(n);
    let (m0, _) = reweight_margin(fp, &id)?;
    if m0 >= 0.0 {
        return finish(fp, id, SolverTrace { iterations: 0, final_objective: m0, best_t: vec![1.0] });
    }
    let known = feasible_candidates(fp)?;
    let eval = |s: &HermitianMatrix| reweight_margin(fp, s);
    let q = fp.q().hermitian().matrix().clone();
    let l = fp.form_operator();
    let grad = move |v: &[C64]| -> ComplexMatrix {
        let a = q.mul_vec(v);
        let b = l.mul_vec(v);
        let g = ComplexMatrix::from_fn(n, n, |i, j| a[i] * b[j].conj());
        g.hermitian_part()
    };
    let out = bisect(&eval, &grad, Some(known.clone()), T_MAX, max_iter, seed, n)?;
    let (witness, trace) = if out.margin >= 0.0 {
        (out.witness, SolverTrace { iterations: out.iterations, final_objective: out.margin, best_t: out.best_t })
    } else {
        let m = reweight_margin(fp, &known.0)?.0;
        (known.0, SolverTrace { iterations: out.iterations, final_objective: m, best_t: out.best_t })
    };
    let cert = finish(fp, witness, trace)?;
    if !cert.valid {
        return Err(Error::NoCertificateFound { best_margin: cert.margin, scale: cert.scale });
    }
    Ok(cert)
}

pub(crate) fn finish(fp: &FormPair, witness: HermitianMatrix, trace: SolverTrace) -> Result<Certificate> {
    finish_kind(fp, witness, trace, CertificateKind::AccretiveReweight)
}

pub(crate) fn finish_kind(fp: &FormPair, witness: HermitianMatrix, trace: SolverTrace, kind: CertificateKind) -> Result<Certificate> {
    let e = hermitian_eig(&witness)?;
    let positive = e.min() > 0.0;
    let cond = if positive { e.max() / e.min() } else { f64::INFINITY };
    let (margin, _) = reweight_margin(fp, &witness)?;
    let scale = form_scale(fp, &witness)?;
    let valid = positive && margin >= -VALID_REL_TOL * scale;
    let theta_certified = if valid { theta_for_witness(fp, &witness)? } else { None };
    Ok(Certificate {
        kind,
        witness,
        margin,
        cond,
        scale,
        valid,
        theta_certified,
        trace,
        fan_delta: None,
        fan_residual: None,
        transformed_norm: None,
    })
}
