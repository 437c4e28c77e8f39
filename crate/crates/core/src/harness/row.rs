//! One CSV row per generated instance.

use crate::error::Result;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

pub const SCHEMA_VERSION: u32 = 1;

pub const COLUMNS: [&str; 19] = [
    "experiment",
    "family",
    "dim",
    "seed",
    "beta",
    "c_minus",
    "c_plus",
    "kappa",
    "ritt_const",
    "power_bound",
    "ritt_discrete",
    "poly_bound_lb",
    "hinfty_lb",
    "cert_margin",
    "cert_cond",
    "triangularity_partial",
    "m_used",
    "runtime_ms",
    "errors",
];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SweepRow {
    pub experiment: String,
    pub family: String,
    pub dim: usize,
    pub seed: u64,
    pub beta: Option<f64>,
    pub c_minus: Option<f64>,
    pub c_plus: Option<f64>,
    pub kappa: Option<f64>,
    pub ritt_const: Option<f64>,
    pub power_bound: Option<f64>,
    pub ritt_discrete: Option<f64>,
    pub poly_bound_lb: Option<f64>,
    pub hinfty_lb: Option<f64>,
    pub cert_margin: Option<f64>,
    pub cert_cond: Option<f64>,
    /// Normalization of `cert_margin` (not a CSV column; kept for checks).
    pub cert_scale: Option<f64>,
    pub triangularity_partial: Option<f64>,
    pub m_used: Option<u32>,
    /// Wall time; written only to the timing sidecar so the main table is
    /// byte-reproducible.
    pub runtime_ms: Option<u128>,
    pub errors: Vec<String>,
}

fn num(v: Option<f64>) -> String {
    match v {
        Some(x) if x.is_finite() => format!("{x:.12e}"),
        _ => "NA".into(),
    }
}

fn clean(s: &str) -> String {
    s.chars().map(|c| if c == ',' || c == '\n' || c == '\r' || c == ';' { ' ' } else { c }).collect()
}

impl SweepRow {
    pub fn header() -> String {
        format!("# katolab sweep schema={SCHEMA_VERSION}\n{}", COLUMNS.join(","))
    }

    pub fn to_csv(&self) -> String {
        let errors: Vec<String> = self.errors.iter().map(|e| clean(e)).collect();
        let fields = [
            clean(&self.experiment),
            clean(&self.family),
            self.dim.to_string(),
            self.seed.to_string(),
            num(self.beta),
            num(self.c_minus),
            num(self.c_plus),
            num(self.kappa),
            num(self.ritt_const),
            num(self.power_bound),
            num(self.ritt_discrete),
            num(self.poly_bound_lb),
            num(self.hinfty_lb),
            num(self.cert_margin),
            num(self.cert_cond),
            num(self.triangularity_partial),
            self.m_used.map_or_else(|| "NA".into(), |m| m.to_string()),
            "NA".into(),
            if errors.is_empty() { "NA".into() } else { errors.join(";") },
        ];
        fields.join(",")
    }
}

/// Write `contents` to `path` through a temporary file in the same
/// directory and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = SweepRow::header();
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.{suffix}"))
}

pub fn timing_path(csv: &Path) -> PathBuf {
    sidecar(csv, "timing.csv")
}

pub fn kappa_data_path(csv: &Path) -> PathBuf {
    sidecar(csv, "kappa.dat")
}

pub fn render_timing(rows: &[SweepRow]) -> String {
    let mut out = String::from("experiment,family,dim,seed,runtime_ms\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{},{}", r.experiment, r.family, r.dim, r.seed, r.runtime_ms.map_or_else(|| "NA".into(), |t| t.to_string()));
    }
    out
}

/// Largest `kappa` over seeds for each dimension, in ascending dimension.
pub fn kappa_by_dim(rows: &[SweepRow]) -> Vec<(usize, f64)> {
    let mut out: Vec<(usize, f64)> = Vec::new();
    for r in rows {
        let Some(k) = r.kappa else { continue };
        match out.iter_mut().find(|(d, _)| *d == r.dim) {
            Some(e) => e.1 = e.1.max(k),
            None => out.push((r.dim, k)),
        }
    }
    out.sort_by_key(|e| e.0);
    out
}

pub fn render_kappa_data(rows: &[SweepRow]) -> String {
    let mut out = String::from("# dim kappa_max_over_seeds\n");
    for (d, k) in kappa_by_dim(rows) {
        let _ = writeln!(out, "{d} {k:.12e}");
    }
    out
}

/// Parse a CSV produced by [`render_csv`] back into rows (runtime and
/// certificate scale are not stored and come back as `None`).
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>> {
    use crate::error::Error;
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Parse("empty CSV".into()))?;
    if header != COLUMNS.join(",") {
        return Err(Error::Parse(format!("unexpected CSV header `{header}`")));
    }
    let opt = |s: &str| -> Result<Option<f64>> {
        if s == "NA" {
            Ok(None)
        } else {
            s.parse().map(Some).map_err(|e| Error::Parse(format!("`{s}`: {e}")))
        }
    };
    let mut rows = Vec::new();
    for line in lines.filter(|l| !l.is_empty()) {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != COLUMNS.len() {
            return Err(Error::Parse(format!("expected {} fields, got {}", COLUMNS.len(), f.len())));
        }
        let int = |s: &str| s.parse::<u64>().map_err(|e| Error::Parse(format!("`{s}`: {e}")));
        rows.push(SweepRow {
            experiment: f[0].into(),
            family: f[1].into(),
            dim: int(f[2])? as usize,
            seed: int(f[3])?,
            beta: opt(f[4])?,
            c_minus: opt(f[5])?,
            c_plus: opt(f[6])?,
            kappa: opt(f[7])?,
            ritt_const: opt(f[8])?,
            power_bound: opt(f[9])?,
            ritt_discrete: opt(f[10])?,
            poly_bound_lb: opt(f[11])?,
            hinfty_lb: opt(f[12])?,
            cert_margin: opt(f[13])?,
            cert_cond: opt(f[14])?,
            cert_scale: None,
            triangularity_partial: opt(f[15])?,
            m_used: if f[16] == "NA" { None } else { Some(int(f[16])? as u32) },
            runtime_ms: None,
            errors: if f[18] == "NA" { Vec::new() } else { f[18].split(';').map(String::from).collect() },
        });
    }
    Ok(rows)
}
