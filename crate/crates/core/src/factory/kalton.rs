//! Accretive models `A = I + 2^{-m} W K U` with `K = V1 diag(a) V2*` and
//! dyadic-type weights `S = diag(gamma^k)`, converted to pairs.

use crate::diagnostics::kato_constants;
use crate::diagnostics::numrange::numerical_range_standard;
use crate::error::{Error, Result};
use crate::form::{from_accretive_model, AccretiveModel, FormPair};
use crate::linalg::matrix::{ComplexMatrix, C64, I, ONE};
use crate::linalg::random::{random_unitary, seeded_rng};
use crate::spectral::DecaySequence;
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// Largest scaling exponent tried.
pub const MAX_M: u32 = 64;
/// Required gap in `W(A) ⊂ {|z - 1| < 1 - RANGE_MARGIN}`.
pub const RANGE_MARGIN: f64 = 1e-9;
/// Cap on `cond(S^2)` used to pick the weight base.
pub const MAX_WEIGHT_COND: f64 = 1e10;
/// Support directions used for the containment check.
pub const RANGE_ANGLES: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KaltonStrategy {
    /// Independent random unitaries `U`, `W`.
    Random,
    /// `V1 = V2 = I`, `U` the index reversal and `W = iI`: the largest
    /// singular direction of `K` is paired with the smallest.
    ShiftCoupling,
    /// Best of `trials` random seeds by `kappa` at dimension `n/2`.
    AdversarialSearch(usize),
}

impl fmt::Display for KaltonStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KaltonStrategy::Random => f.write_str("random"),
            KaltonStrategy::ShiftCoupling => f.write_str("shift_coupling"),
            KaltonStrategy::AdversarialSearch(t) => write!(f, "adversarial:{t}"),
        }
    }
}

impl FromStr for KaltonStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().split_once(':') {
            None if s.trim() == "random" => Ok(KaltonStrategy::Random),
            None if s.trim() == "shift_coupling" => Ok(KaltonStrategy::ShiftCoupling),
            Some(("adversarial", t)) => t
                .trim()
                .parse()
                .ok()
                .filter(|&t| t > 0)
                .map(KaltonStrategy::AdversarialSearch)
                .ok_or_else(|| Error::Parse(format!("bad trial count in `{s}`"))),
            _ => Err(Error::Parse(format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct KaltonInstance {
    pub pair: FormPair,
    pub model: AccretiveModel,
    pub m_used: u32,
    pub gamma: f64,
    /// Seed the unitaries were drawn from (differs from the request under
    /// adversarial search).
    pub source_seed: u64,
}

/// `min(2, MAX_WEIGHT_COND^{1 / (2(n-1))})`.
pub fn default_gamma(n: usize) -> f64 {
    if n < 2 {
        return 2.0;
    }
    MAX_WEIGHT_COND.powf(1.0 / (2.0 * (n - 1) as f64)).min(2.0)
}

/// Candidate seeds for adversarial search.
pub fn candidate_seed(seed: u64, j: usize) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(j as u64)
}

fn coupling(n: usize, seed: u64, decay: &[f64], shift: bool) -> ComplexMatrix {
    let d: Vec<C64> = decay.iter().map(|&a| C64::new(a, 0.0)).collect();
    if shift {
        let reversal = ComplexMatrix::from_fn(n, n, |i, j| if i + j == n - 1 { ONE } else { C64::new(0.0, 0.0) });
        return (&ComplexMatrix::from_diag(&d) * &reversal).scale(I);
    }
    let mut rng = seeded_rng(seed);
    let v1 = random_unitary(&mut rng, n);
    let v2 = random_unitary(&mut rng, n);
    let u = random_unitary(&mut rng, n);
    let w = random_unitary(&mut rng, n);
    let k = &v1.scale_columns(&d) * &v2.adjoint();
    &(&w * &k) * &u
}

/// Smallest `m` with `W(I + 2^{-m} X) ⊂ {|z - 1| < 1 - RANGE_MARGIN}`.
pub fn scaling_exponent(x: &ComplexMatrix) -> Result<u32> {
    let range = numerical_range_standard(x, RANGE_ANGLES)?;
    let r = range.enclosing_radius(C64::new(0.0, 0.0));
    (0..=MAX_M)
        .find(|&m| r * 0.5f64.powi(m as i32) < 1.0 - RANGE_MARGIN)
        .ok_or(Error::RangeScalingFailed { max_m: MAX_M })
}

fn build(n: usize, seed: u64, decay: &DecaySequence, shift: bool, gamma: f64) -> Result<KaltonInstance> {
    let x = coupling(n, seed, &decay.values()[..n], shift);
    let m = scaling_exponent(&x)?;
    let a = x.scale_real(0.5f64.powi(m as i32)).shift_diag(ONE);
    let s_diag: Vec<f64> = (0..n).map(|k| gamma.powi(k as i32)).collect();
    let model = AccretiveModel::new(a, s_diag)?;
    let pair = from_accretive_model(&model)?.with_label("kalton");
    Ok(KaltonInstance { pair, model, m_used: m, gamma, source_seed: seed })
}

/// Kalton-type instance of dimension `n`. `gamma` defaults to
/// [`default_gamma`].
pub fn gen_kalton(n: usize, seed: u64, decay: &DecaySequence, strategy: KaltonStrategy, gamma: Option<f64>) -> Result<KaltonInstance> {
    if n < 2 {
        return Err(Error::BadParameter(format!("dimension must be >= 2, got {n}")));
    }
    if decay.len() < n {
        return Err(Error::BadParameter(format!("decay has {} terms, dimension is {n}", decay.len())));
    }
    let gamma = gamma.unwrap_or_else(|| default_gamma(n));
    if !(gamma > 1.0 && gamma <= 2.0) {
        return Err(Error::BadParameter(format!("weight base must lie in (1, 2], got {gamma}")));
    }
    match strategy {
        KaltonStrategy::Random => build(n, seed, decay, false, gamma),
        KaltonStrategy::ShiftCoupling => build(n, seed, decay, true, gamma),
        KaltonStrategy::AdversarialSearch(trials) => {
            let half = (n / 2).max(2);
            let g_half = default_gamma(half).min(gamma);
            let scores: Vec<(f64, u64)> = (0..trials)
                .into_par_iter()
                .map(|j| {
                    let s = candidate_seed(seed, j);
                    let kappa = build(half, s, decay, false, g_half)
                        .and_then(|inst| kato_constants(&inst.pair))
                        .map_or(f64::NEG_INFINITY, |k| k.kappa);
                    (kappa, s)
                })
                .collect();
            let best = scores
                .iter()
                .copied()
                .reduce(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
                .ok_or_else(|| Error::BadParameter("adversarial search needs at least one trial".into()))?;
            build(n, best.1, decay, false, gamma)
        }
    }
}
