//! Projected subgradient ascent on `lambda_min` of a linear matrix map over
//! the slab `{I <= X <= t I}`, with bisection on `log t`.

use crate::error::Result;
use crate::linalg::matrix::{ComplexMatrix, HermitianMatrix, C64};
use crate::linalg::random::{random_hermitian, seeded_rng};
use crate::linalg::hermitian_eig;

/// Margin and a unit eigenvector for the smallest eigenvalue of the slack.
pub(crate) type Evaluate<'a> = dyn Fn(&HermitianMatrix) -> Result<(f64, Vec<C64>)> + 'a;
/// Subgradient of the margin at that eigenvector.
pub(crate) type Subgradient<'a> = dyn Fn(&[C64]) -> ComplexMatrix + 'a;

pub(crate) struct SlabOutcome {
    pub witness: HermitianMatrix,
    pub margin: f64,
    pub iterations: usize,
    pub best_t: Vec<f64>,
}

/// Bisection tolerance in `log t`.
pub(crate) const LOG_T_TOL: f64 = 1e-2;

pub(crate) fn clip(x: &HermitianMatrix, lo: f64, hi: f64) -> Result<HermitianMatrix> {
    Ok(hermitian_eig(x)?.apply(|v| v.clamp(lo, hi)))
}

/// Rescale so the smallest eigenvalue is one; returns the condition number.
pub(crate) fn normalize_witness(x: &HermitianMatrix) -> Result<(HermitianMatrix, f64)> {
    let e = hermitian_eig(x)?;
    let lo = e.min();
    let y = HermitianMatrix::symmetrized(&x.scale_real(1.0 / lo));
    Ok((y, e.max() / lo))
}

struct Attempt {
    x: HermitianMatrix,
    margin: f64,
    iterations: usize,
    feasible: bool,
}

fn feasibility(eval: &Evaluate, grad: &Subgradient, start: &HermitianMatrix, t: f64, budget: usize) -> Result<Attempt> {
    let mut x = clip(start, 1.0, t)?;
    let mut best: Option<(HermitianMatrix, f64)> = None;
    for k in 1..=budget.max(1) {
        let (m, v) = eval(&x)?;
        if best.as_ref().is_none_or(|b| m > b.1) {
            best = Some((x.clone(), m));
        }
        if m >= 0.0 {
            return Ok(Attempt { x, margin: m, iterations: k, feasible: true });
        }
        let mut g = grad(&v);
        let gn = g.frobenius_norm();
        if gn == 0.0 {
            break;
        }
        g = g.scale_real((t / 10.0) / (k as f64).sqrt() / gn);
        x = clip(&HermitianMatrix::symmetrized(&(x.matrix() + &g)), 1.0, t)?;
    }
    let (x, margin) = best.expect("at least one evaluation");
    Ok(Attempt { x, margin, iterations: budget, feasible: false })
}

/// Search for the smallest `t` (to `LOG_T_TOL` in `log t`) such that a
/// witness with spectrum in `[1, t]` has nonnegative margin.
///
/// `known` is a feasible witness with its condition number; it bounds the
/// search from above (capped at `t_max`). Returns the best feasible witness
/// found, or the best infeasible one when nothing feasible was reached.
pub(crate) fn bisect(
    eval: &Evaluate,
    grad: &Subgradient,
    known: Option<(HermitianMatrix, f64)>,
    t_max: f64,
    max_iter: usize,
    seed: u64,
    n: usize,
) -> Result<SlabOutcome> {
    let levels = ((t_max.ln() / LOG_T_TOL).log2().ceil() as usize).max(1) + 1;
    let per_level = (max_iter / levels).max(50);
    let mut used = 0usize;
    let mut best_t = Vec::new();

    // Small seeded perturbation of starting points, to avoid stalling on
    // exactly repeated eigenvalues.
    let jitter = {
        let h = random_hermitian(&mut seeded_rng(seed), n);
        let f = h.frobenius_norm().max(f64::MIN_POSITIVE);
        h.scale_real(1e-6 / f)
    };
    let perturbed = |x: &HermitianMatrix, t: f64| HermitianMatrix::symmetrized(&(x.matrix() + &jitter.scale_real(t)));

    let (mut best, mut hi) = match known {
        Some((x, cond)) if cond <= t_max => (Some((x, f64::NAN)), cond.ln()),
        Some((x, _)) => {
            let a = feasibility(eval, grad, &perturbed(&x, t_max), t_max, per_level)?;
            used += a.iterations;
            if a.feasible {
                (Some((a.x, a.margin)), t_max.ln())
            } else {
                return Ok(SlabOutcome { witness: x, margin: f64::NAN, iterations: used, best_t });
            }
        }
        None => {
            let start = HermitianMatrix::identity(n).scale_real(t_max.sqrt());
            let a = feasibility(eval, grad, &perturbed(&HermitianMatrix::symmetrized(&start), t_max), t_max, max_iter / 2)?;
            used += a.iterations;
            if !a.feasible {
                return Ok(SlabOutcome { witness: a.x, margin: a.margin, iterations: used, best_t });
            }
            (Some((a.x, a.margin)), t_max.ln())
        }
    };
    if let Some((x, _)) = &best {
        let m = eval(x)?.0;
        best = Some((x.clone(), m));
    }
    best_t.push(hi.exp());
    let mut lo = 0.0;
    while hi - lo > LOG_T_TOL && used < max_iter {
        let mid = 0.5 * (lo + hi);
        let t = mid.exp();
        let start = perturbed(&best.as_ref().unwrap().0, t);
        let a = feasibility(eval, grad, &start, t, per_level.min(max_iter - used))?;
        used += a.iterations;
        if a.feasible {
            hi = mid;
            best = Some((a.x, a.margin));
        } else {
            lo = mid;
        }
        best_t.push(hi.exp());
    }
    let (witness, margin) = best.unwrap();
    Ok(SlabOutcome { witness, margin, iterations: used, best_t })
}
