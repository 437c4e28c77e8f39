//! Seeded instance generators.

pub mod commuting;
pub mod kalton;
pub mod perturbation;
pub mod schatten;
pub mod svequiv;

pub use commuting::{gen_commuting, Basis, SpectrumSpec};
pub use kalton::{gen_kalton, KaltonInstance, KaltonStrategy};
pub use perturbation::{gen_perturbation, DeltaSpec, PerturbationTarget};
pub use schatten::gen_schatten;
pub use svequiv::{verify_singular_value_equivalences, SvEquivalenceReport};

use crate::error::{Error, Result};
use crate::form::{AccretiveModel, FormPair};
use crate::spectral::{prescribe_decay, DecayKind};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Commuting,
    Schatten,
    TriangularPerturbation,
    RealpartPerturbation,
    QPerturbation,
    Kalton,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Commuting,
        Family::Schatten,
        Family::TriangularPerturbation,
        Family::RealpartPerturbation,
        Family::QPerturbation,
        Family::Kalton,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Commuting => "commuting",
            Family::Schatten => "schatten",
            Family::TriangularPerturbation => "triangular_perturbation",
            Family::RealpartPerturbation => "realpart_perturbation",
            Family::QPerturbation => "q_perturbation",
            Family::Kalton => "kalton",
        }
    }

    /// Parameter keys each family understands.
    pub fn known_params(self) -> &'static [&'static str] {
        match self {
            Family::Commuting => &["t", "q", "basis"],
            Family::Schatten => &["decay", "q_cond"],
            Family::TriangularPerturbation | Family::RealpartPerturbation | Family::QPerturbation => {
                &["t", "q", "basis", "decay", "eps"]
            }
            Family::Kalton => &["decay", "strategy", "gamma"],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown family `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub dim: usize,
    pub seed: u64,
    pub params: BTreeMap<String, String>,
}

#[derive(Clone, Debug)]
pub struct Generated {
    pub pair: FormPair,
    pub model: Option<AccretiveModel>,
    pub m_used: Option<u32>,
}

impl GeneratorSpec {
    pub fn new(family: Family, dim: usize, seed: u64) -> Self {
        Self { family, dim, seed, params: BTreeMap::new() }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    /// Check dimension and parameter names without generating anything.
    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::BadParameter(format!("dimension must be >= 2, got {}", self.dim)));
        }
        let known = self.family.known_params();
        if let Some(k) = self.params.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(Error::BadParameter(format!("family {} has no parameter `{k}`", self.family)));
        }
        Ok(())
    }

    fn get<T: FromStr>(&self, key: &str, default: &str) -> Result<T>
    where
        T::Err: fmt::Display,
    {
        let raw = self.params.get(key).map(String::as_str).unwrap_or(default);
        raw.parse::<T>().map_err(|e| Error::Parse(format!("parameter {key}={raw}: {e}")))
    }

    fn decay(&self, default: &str) -> Result<crate::spectral::DecaySequence> {
        prescribe_decay(self.get::<DecayKind>("decay", default)?, self.dim)
    }

    fn commuting_base(&self) -> Result<FormPair> {
        gen_commuting(
            self.dim,
            self.seed,
            &self.get("t", "uniform:-3:3")?,
            &self.get("q", "log_uniform:0.0001:1")?,
            self.get("basis", "random")?,
        )
    }

    pub fn generate(&self) -> Result<Generated> {
        self.validate()?;
        let n = self.dim;
        let (pair, model, m_used) = match self.family {
            Family::Commuting => (self.commuting_base()?, None, None),
            Family::Schatten => {
                let fp = gen_schatten(n, self.seed, &self.decay("power:2")?, self.get("q_cond", "1e6")?)?;
                (fp, None, None)
            }
            Family::TriangularPerturbation | Family::RealpartPerturbation | Family::QPerturbation => {
                let target = match self.family {
                    Family::TriangularPerturbation => PerturbationTarget::ImaginaryPart,
                    Family::RealpartPerturbation => PerturbationTarget::RealPart,
                    _ => PerturbationTarget::Embedding,
                };
                let delta = DeltaSpec {
                    decay: self.decay("geometric:0.5")?,
                    eps: self.get("eps", "0.1")?,
                    seed: self.seed.wrapping_add(0x5eed),
                };
                let (fp, eps) = gen_perturbation(&self.commuting_base()?, target, &delta)?;
                (fp.with_meta("eps_used", eps), None, None)
            }
            Family::Kalton => {
                let gamma = match self.params.get("gamma") {
                    Some(_) => Some(self.get::<f64>("gamma", "")?),
                    None => None,
                };
                let inst = gen_kalton(n, self.seed, &self.decay("reciprocal_log")?, self.get("strategy", "random")?, gamma)?;
                let fp = inst
                    .pair
                    .with_meta("gamma", inst.gamma)
                    .with_meta("m_used", inst.m_used)
                    .with_meta("source_seed", inst.source_seed);
                (fp, Some(inst.model), Some(inst.m_used))
            }
        };
        let mut pair = pair.with_label(self.family.name()).with_meta("family", self.family).with_meta("seed", self.seed);
        for (k, v) in &self.params {
            pair = pair.with_meta(&format!("param.{k}"), v);
        }
        Ok(Generated { pair, model, m_used })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        for fam in Family::ALL {
            let spec = GeneratorSpec::new(fam, 6, 3);
            let a = spec.generate().unwrap();
            let b = spec.generate().unwrap();
            assert_eq!(a.pair.t(), b.pair.t(), "{fam}");
            assert_eq!(a.pair.q().hermitian(), b.pair.q().hermitian(), "{fam}");
            assert_eq!(a.pair.meta()["family"], fam.name());
        }
    }

    #[test]
    fn unknown_parameter_rejected() {
        let spec = GeneratorSpec::new(Family::Schatten, 4, 0).with_param("strategy", "random");
        assert!(matches!(spec.generate(), Err(Error::BadParameter(_))));
        assert!(GeneratorSpec::new(Family::Commuting, 1, 0).validate().is_err());
    }
}
