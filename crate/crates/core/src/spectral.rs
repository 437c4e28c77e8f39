//! Singular-value functionals: Schatten norms, the triangularity partial
//! sum `sum s_n / (n + 1)`, and growth diagnostics for decay sequences.

use crate::error::{Error, Result};
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::singular_values;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DecayKind {
    /// `a_n = n^{-alpha}`.
    Power(f64),
    /// `a_n = 1 / log(n + 2)`.
    ReciprocalLog,
    /// `a_n = r^{n-1}`.
    Geometric(f64),
}

impl fmt::Display for DecayKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecayKind::Power(a) => write!(f, "power:{a}"),
            DecayKind::ReciprocalLog => f.write_str("reciprocal_log"),
            DecayKind::Geometric(r) => write!(f, "geometric:{r}"),
        }
    }
}

impl FromStr for DecayKind {
    type Err = Error;

    /// `power:2`, `reciprocal_log`, `geometric:0.5`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let num = |a: Option<&str>| -> Result<f64> {
            a.ok_or_else(|| Error::Parse(format!("decay `{s}` needs a parameter")))?
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("decay `{s}`: {e}")))
        };
        match name {
            "power" => Ok(DecayKind::Power(num(arg)?)),
            "geometric" => Ok(DecayKind::Geometric(num(arg)?)),
            "reciprocal_log" if arg.is_none() => Ok(DecayKind::ReciprocalLog),
            _ => Err(Error::Parse(format!("unknown decay `{s}`"))),
        }
    }
}

/// Positive nonincreasing sequence `a_1 >= a_2 >= ...`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecaySequence {
    values: Vec<f64>,
    generator: Option<DecayKind>,
}

impl DecaySequence {
    pub fn new(values: Vec<f64>, generator: Option<DecayKind>) -> Result<Self> {
        if let Some(v) = values.iter().find(|v| !(v.is_finite() && **v > 0.0)) {
            return Err(Error::BadParameter(format!("decay values must be positive and finite, found {v}")));
        }
        if let Some(w) = values.windows(2).find(|w| w[1] > w[0] + 1e-15) {
            return Err(Error::BadParameter(format!("decay sequence increases from {} to {}", w[0], w[1])));
        }
        Ok(Self { values, generator })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn generator(&self) -> Option<DecayKind> {
        self.generator
    }

    pub fn scaled(&self, eps: f64) -> Result<Self> {
        Self::new(self.values.iter().map(|v| v * eps).collect(), self.generator)
    }
}

pub fn prescribe_decay(kind: DecayKind, n: usize) -> Result<DecaySequence> {
    let values: Vec<f64> = match kind {
        DecayKind::Power(alpha) if alpha > 0.0 && alpha.is_finite() => {
            (1..=n).map(|k| (k as f64).powf(-alpha)).collect()
        }
        DecayKind::Geometric(r) if r > 0.0 && r < 1.0 => (0..n).map(|k| r.powi(k as i32)).collect(),
        DecayKind::ReciprocalLog => (1..=n).map(|k| 1.0 / ((k + 2) as f64).ln()).collect(),
        _ => return Err(Error::BadParameter(format!("invalid decay parameters {kind}"))),
    };
    if values.last().is_some_and(|&v| v < f64::MIN_POSITIVE) {
        return Err(Error::BadParameter(format!("{kind} underflows below f64::MIN_POSITIVE within {n} terms")));
    }
    DecaySequence::new(values, Some(kind))
}

/// `(sum s_n^p)^{1/p}`.
pub fn schatten_norm(m: &ComplexMatrix, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::BadParameter(format!("Schatten exponent must be >= 1, got {p}")));
    }
    let s = singular_values(m)?;
    if p.is_infinite() {
        return Ok(s.first().copied().unwrap_or(0.0));
    }
    let top = s.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return Ok(0.0);
    }
    // Scale by s_1 to keep large p from overflowing.
    Ok(top * s.iter().map(|v| (v / top).powf(p)).sum::<f64>().powf(1.0 / p))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Triangularity {
    pub partial_sum: f64,
    /// `s_n / (n + 1)`, 1-based `n`.
    pub per_term: Vec<f64>,
}

pub fn triangularity_functional(m: &ComplexMatrix) -> Result<Triangularity> {
    let s = singular_values(m)?;
    let per_term: Vec<f64> = s.iter().enumerate().map(|(k, v)| v / (k + 2) as f64).collect();
    Ok(Triangularity { partial_sum: per_term.iter().sum(), per_term })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthClass {
    DivergentLike,
    ConvergentLike,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DivergenceReport {
    /// `(N_k, sum_{n <= N_k} a_n / (n + 1))` at `N/4`, `N/2`, `N`.
    pub checkpoints: [(usize, f64); 3],
    /// Least-squares slope of the partial sums against `log N_k`.
    pub log_slope: f64,
    pub class: GrowthClass,
}

/// Slope below `SLOPE_FLOOR * a_1` is reported as convergent-like.
pub const SLOPE_FLOOR: f64 = 1e-3;

pub fn divergence_diagnostic(seq: &DecaySequence, n: usize) -> Result<DivergenceReport> {
    if n < 4 || seq.len() < n {
        return Err(Error::BadParameter(format!("need N >= 4 and at least N terms, got N = {n} with {} terms", seq.len())));
    }
    let marks = [n / 4, n / 2, n];
    let mut sums = [0.0; 3];
    let mut acc = 0.0;
    let mut next = 0;
    for (k, a) in seq.values()[..n].iter().enumerate() {
        acc += a / (k + 2) as f64;
        while next < 3 && k + 1 == marks[next] {
            sums[next] = acc;
            next += 1;
        }
    }
    let xs: Vec<f64> = marks.iter().map(|&m| (m as f64).ln()).collect();
    let xm = xs.iter().sum::<f64>() / 3.0;
    let ym = sums.iter().sum::<f64>() / 3.0;
    let sxy: f64 = xs.iter().zip(&sums).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - xm).powi(2)).sum();
    let log_slope = sxy / sxx;
    let class = if log_slope > SLOPE_FLOOR * seq.values()[0] {
        GrowthClass::DivergentLike
    } else {
        GrowthClass::ConvergentLike
    };
    Ok(DivergenceReport {
        checkpoints: [(marks[0], sums[0]), (marks[1], sums[1]), (marks[2], sums[2])],
        log_slope,
        class,
    })
}
