use crate::error::{Error, Result};
use crate::form::{make_form_pair, FormPair};
use crate::linalg::matrix::ComplexMatrix;
use crate::linalg::random::{log_uniform, random_unitary, seeded_rng, with_spectrum, LabRng};
use rand::Rng;
use std::fmt;
use std::str::FromStr;

/// How a diagonal spectrum is drawn.
#[derive(Clone, Debug, PartialEq)]
pub enum SpectrumSpec {
    Explicit(Vec<f64>),
    Uniform { lo: f64, hi: f64 },
    LogUniform { lo: f64, hi: f64 },
}

impl SpectrumSpec {
    pub fn draw(&self, rng: &mut LabRng, n: usize) -> Result<Vec<f64>> {
        match self {
            SpectrumSpec::Explicit(v) if v.len() == n => Ok(v.clone()),
            SpectrumSpec::Explicit(v) => {
                Err(Error::BadParameter(format!("explicit spectrum has {} entries, dimension is {n}", v.len())))
            }
            SpectrumSpec::Uniform { lo, hi } if lo <= hi => {
                Ok((0..n).map(|_| lo + (hi - lo) * rng.random::<f64>()).collect())
            }
            SpectrumSpec::LogUniform { lo, hi } if *lo > 0.0 && lo <= hi => Ok(log_uniform(rng, n, *lo, *hi)),
            _ => Err(Error::BadParameter(format!("invalid spectrum range {self}"))),
        }
    }
}

impl fmt::Display for SpectrumSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectrumSpec::Explicit(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "explicit:{}", parts.join(";"))
            }
            SpectrumSpec::Uniform { lo, hi } => write!(f, "uniform:{lo}:{hi}"),
            SpectrumSpec::LogUniform { lo, hi } => write!(f, "log_uniform:{lo}:{hi}"),
        }
    }
}

impl FromStr for SpectrumSpec {
    type Err = Error;

    /// `explicit:1;-1;0.5`, `uniform:-3:3`, `log_uniform:1e-4:1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |e: &dyn fmt::Display| Error::Parse(format!("spectrum `{s}`: {e}"));
        let (kind, rest) = s.split_once(':').ok_or_else(|| bad(&"missing `:`"))?;
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| bad(&e));
        match kind.trim() {
            "explicit" => Ok(SpectrumSpec::Explicit(rest.split(';').map(num).collect::<Result<_>>()?)),
            "uniform" | "log_uniform" => {
                let (lo, hi) = rest.split_once(':').ok_or_else(|| bad(&"expected lo:hi"))?;
                let (lo, hi) = (num(lo)?, num(hi)?);
                Ok(if kind.trim() == "uniform" {
                    SpectrumSpec::Uniform { lo, hi }
                } else {
                    SpectrumSpec::LogUniform { lo, hi }
                })
            }
            other => Err(bad(&format!("unknown kind `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Identity,
    Random,
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "identity" => Ok(Basis::Identity),
            "random" => Ok(Basis::Random),
            other => Err(Error::Parse(format!("unknown basis `{other}`"))),
        }
    }
}

/// `T` and `Q` diagonal in a common orthonormal basis.
pub fn gen_commuting(n: usize, seed: u64, t_spec: &SpectrumSpec, q_spec: &SpectrumSpec, basis: Basis) -> Result<FormPair> {
    let mut rng = seeded_rng(seed);
    let v = match basis {
        Basis::Identity => ComplexMatrix::identity(n),
        Basis::Random => random_unitary(&mut rng, n),
    };
    let t = t_spec.draw(&mut rng, n)?;
    let q = q_spec.draw(&mut rng, n)?;
    if let Some(bad) = q.iter().find(|x| !(**x > 0.0)) {
        return Err(Error::BadParameter(format!("Q spectrum must be positive, got {bad}")));
    }
    make_form_pair(with_spectrum(&v, &t).matrix(), with_spectrum(&v, &q).matrix(), "commuting")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::kato_constants;

    fn closed_form_kappa(t: &[f64]) -> f64 {
        let m: Vec<f64> = t.iter().map(|x| (1.0 + x * x).sqrt()).collect();
        (m.iter().cloned().fold(0.0, f64::max) / m.iter().cloned().fold(f64::INFINITY, f64::min)).sqrt()
    }

    #[test]
    fn two_by_two_closed_form() {
        for t in [[1.0, -1.0], [0.0, 1.0]] {
            let fp = gen_commuting(
                2,
                0,
                &SpectrumSpec::Explicit(t.to_vec()),
                &SpectrumSpec::Explicit(vec![1.0, 4.0]),
                Basis::Identity,
            )
            .unwrap();
            let k = kato_constants(&fp).unwrap();
            assert!((k.kappa - closed_form_kappa(&t)).abs() < 1e-12);
        }
        assert_eq!(closed_form_kappa(&[1.0, -1.0]), 1.0);
        assert!((closed_form_kappa(&[0.0, 1.0]) - 2f64.powf(0.25)).abs() < 1e-15);
    }

    #[test]
    fn spec_round_trip() {
        for s in ["explicit:1;-1;0.5", "uniform:-3:3", "log_uniform:0.0001:1"] {
            let p: SpectrumSpec = s.parse().unwrap();
            assert_eq!(p.to_string().parse::<SpectrumSpec>().unwrap(), p);
        }
        assert!("gauss:1".parse::<SpectrumSpec>().is_err());
    }
}
