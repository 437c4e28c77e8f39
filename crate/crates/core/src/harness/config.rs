//! Flat `key = value` sweep configuration. List values are comma separated;
//! `#` starts a comment.
//!
//! ```text
//! experiment = commuting
//! family = commuting
//! dims = 8, 16, 32
//! seeds = 1, 2, 3
//! diagnostics = ritt, polynomial
//! certificate = accretive_reweight
//! param.t = uniform:-3:3
//! output = out/commuting.csv
//! ```

use crate::certificates::CertificateKind;
use crate::diagnostics::DiagnosticOptions;
use crate::error::{Error, Result};
use crate::factory::{Family, GeneratorSpec};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub experiment: String,
    pub family: Family,
    pub params: BTreeMap<String, String>,
    pub dims: Vec<usize>,
    pub seeds: Vec<u64>,
    pub diagnostics: DiagnosticOptions,
    pub triangularity: bool,
    pub certificate: Option<CertificateKind>,
    pub cert_max_iter: usize,
    /// Sector opening for the sector-integral witness.
    pub theta_prime: Option<f64>,
    pub output: PathBuf,
}

const DIAGNOSTIC_NAMES: [&str; 6] = ["kato", "ritt", "polynomial", "hinfty", "sector_profile", "triangularity"];

fn list<T: std::str::FromStr>(key: &str, raw: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().map_err(|e| Error::Config(format!("{key}: `{s}`: {e}"))))
        .collect()
}

fn scalar<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    raw.trim().parse::<T>().map_err(|e| Error::Config(format!("{key}: `{raw}`: {e}")))
}

impl SweepConfig {
    /// Configuration with defaults for `family`: Kato constants only, dims
    /// 8..256 (8..64 for Kalton), seeds 1..8.
    pub fn defaults(experiment: &str, family: Family) -> Self {
        let dims = match family {
            Family::Kalton => vec![8, 16, 32, 64],
            _ => vec![8, 16, 32, 64, 128, 256],
        };
        Self {
            experiment: experiment.to_string(),
            family,
            params: BTreeMap::new(),
            dims,
            seeds: (1..=8).collect(),
            diagnostics: DiagnosticOptions::kato_only(),
            triangularity: false,
            certificate: None,
            cert_max_iter: 2000,
            theta_prime: None,
            output: PathBuf::from(format!("{experiment}.csv")),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut kv: Vec<(String, String)> = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", no + 1)))?;
            let k = k.trim().to_string();
            if kv.iter().any(|(e, _)| *e == k) {
                return Err(Error::Config(format!("line {}: duplicate key `{k}`", no + 1)));
            }
            kv.push((k, v.trim().to_string()));
        }
        let get = |k: &str| kv.iter().find(|(e, _)| e == k).map(|(_, v)| v.as_str());
        let family: Family = scalar("family", get("family").ok_or_else(|| Error::Config("missing `family`".into()))?)?;
        let experiment = get("experiment").unwrap_or(family.name()).to_string();
        let mut cfg = Self::defaults(&experiment, family);
        for (k, v) in &kv {
            match k.as_str() {
                "experiment" | "family" => {}
                "dims" => cfg.dims = list(k, v)?,
                "seeds" => cfg.seeds = list(k, v)?,
                "output" => cfg.output = PathBuf::from(v),
                "cert_max_iter" => cfg.cert_max_iter = scalar(k, v)?,
                "theta_prime" => cfg.theta_prime = Some(scalar(k, v)?),
                "power_cap" => cfg.diagnostics.power_cap = scalar(k, v)?,
                "diag_seed" => cfg.diagnostics.seed = scalar(k, v)?,
                "poly_trials" => cfg.diagnostics.poly_trials = scalar(k, v)?,
                "blaschke_products" => cfg.diagnostics.blaschke_products = scalar(k, v)?,
                "certificate" => {
                    cfg.certificate = match v.as_str() {
                        "none" | "" => None,
                        s => Some(CertificateKind::parse(s).ok_or_else(|| Error::Config(format!("unknown certificate `{s}`")))?),
                    }
                }
                "diagnostics" => {
                    let names: Vec<String> = list(k, v)?;
                    if let Some(bad) = names.iter().find(|n| !DIAGNOSTIC_NAMES.contains(&n.as_str())) {
                        return Err(Error::Config(format!("unknown diagnostic `{bad}`")));
                    }
                    let has = |n: &str| names.iter().any(|x| x == n);
                    cfg.diagnostics.ritt = has("ritt");
                    cfg.diagnostics.polynomial = has("polynomial");
                    cfg.diagnostics.hinfty = has("hinfty");
                    cfg.diagnostics.sector_profile = has("sector_profile");
                    cfg.triangularity = has("triangularity");
                }
                other => match other.strip_prefix("param.") {
                    Some(p) => {
                        cfg.params.insert(p.to_string(), v.clone());
                    }
                    None => return Err(Error::Config(format!("unknown key `{other}`"))),
                },
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.dims.is_empty() {
            return Err(Error::Config("dims must not be empty".into()));
        }
        if self.dims.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("dims must be strictly ascending".into()));
        }
        if self.seeds.is_empty() {
            return Err(Error::Config("seeds must not be empty".into()));
        }
        if self.experiment.is_empty() || self.experiment.contains(|c: char| c == ',' || c.is_whitespace()) {
            return Err(Error::Config(format!("experiment name `{}` must be a nonempty word", self.experiment)));
        }
        if self.certificate == Some(CertificateKind::SectorIntegralS) && self.theta_prime.is_none() {
            return Err(Error::Config("sector_integral certificates need theta_prime".into()));
        }
        for &dim in &self.dims {
            self.spec(dim, self.seeds[0]).validate().map_err(|e| Error::Config(e.to_string()))?;
        }
        Ok(())
    }

    pub fn spec(&self, dim: usize, seed: u64) -> GeneratorSpec {
        GeneratorSpec { family: self.family, dim, seed, params: self.params.clone() }
    }
}
