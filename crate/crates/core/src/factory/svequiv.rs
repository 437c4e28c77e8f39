//! Singular-value comparisons between a converted pair and its model:
//! `s_k(T) ≃ s_k(Im A)` and `s_k(Q) ≃ s_k(S^{-2})`, with constants
//! `1/||Re A||` and `||(Re A)^{-1}||` computed from the model.

use crate::error::{Error, Result};
use crate::form::{AccretiveModel, FormPair};
use crate::linalg::singular_values;

/// Relative slack on the envelope constants.
pub const ENVELOPE_REL_SLACK: f64 = 1e-6;
/// Singular values below this multiple of the top one are compared
/// additively.
pub const ENVELOPE_ABS_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct Envelope {
    /// Smallest and largest ratio over indices above the floor.
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// Allowed interval for the ratio.
    pub lower: f64,
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SvEquivalenceReport {
    pub t_vs_im_a: Envelope,
    pub q_vs_s_inv2: Envelope,
}

fn envelope(num: &[f64], den: &[f64], lower: f64, upper: f64, what: &str) -> Result<Envelope> {
    let scale = num.first().copied().unwrap_or(0.0).max(den.first().copied().unwrap_or(0.0));
    let floor = ENVELOPE_ABS_FLOOR * scale;
    let (mut rmin, mut rmax) = (f64::INFINITY, 0.0f64);
    for (k, (&a, &b)) in num.iter().zip(den).enumerate() {
        let hi = upper * (1.0 + ENVELOPE_REL_SLACK) * b + floor;
        let lo = lower * (1.0 - ENVELOPE_REL_SLACK) * b - floor;
        if a > hi || a < lo {
            return Err(Error::InvariantBreach(format!(
                "{what}: s_{} = {a:.6e} outside [{lo:.6e}, {hi:.6e}]",
                k + 1
            )));
        }
        if b > floor {
            rmin = rmin.min(a / b);
            rmax = rmax.max(a / b);
        }
    }
    Ok(Envelope { ratio_min: rmin, ratio_max: rmax, lower, upper })
}

pub fn verify_singular_value_equivalences(fp: &FormPair, model: &AccretiveModel) -> Result<SvEquivalenceReport> {
    if fp.dim() != model.dim() {
        return Err(Error::DimensionMismatch(format!("pair has dimension {}, model {}", fp.dim(), model.dim())));
    }
    let re = model.re_a();
    let (lower, upper) = (1.0 / re.lambda_max(), 1.0 / re.lambda_min());
    let s_t = singular_values(fp.t())?;
    let s_im = singular_values(&model.im_a())?;
    let s_q: Vec<f64> = fp.q().eig().values.iter().rev().copied().collect();
    let mut s_w: Vec<f64> = model.s_diag().iter().map(|s| 1.0 / (s * s)).collect();
    s_w.sort_by(|a, b| b.total_cmp(a));
    Ok(SvEquivalenceReport {
        t_vs_im_a: envelope(&s_t, &s_im, lower, upper, "s(T) vs s(Im A)")?,
        q_vs_s_inv2: envelope(&s_q, &s_w, lower, upper, "s(Q) vs s(S^-2)")?,
    })
}
