//! Certificate directories: the pair (`T.mat`, `Q.mat`, `meta`), the
//! witness (`witness.mat`) and a `certificate` key=value summary.

use crate::certificates::{Certificate, CertificateKind, SolverTrace};
use crate::error::{Error, Result};
use crate::form::{parse_meta, read_pair_dir, write_pair_dir, FormPair};
use crate::linalg::io::{read_matrix, write_matrix};
use crate::linalg::matrix::HermitianMatrix;
use std::path::Path;

const SUMMARY: &str = "certificate";
const WITNESS: &str = "witness.mat";

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".into(), |x| format!("{x:.17e}"))
}

pub fn write_certificate_dir(dir: &Path, fp: &FormPair, cert: &Certificate) -> Result<()> {
    write_pair_dir(dir, fp)?;
    write_matrix(&dir.join(WITNESS), cert.witness.matrix())?;
    let lines = [
        format!("kind={}", cert.kind),
        format!("margin={:.17e}", cert.margin),
        format!("cond={:.17e}", cert.cond),
        format!("scale={:.17e}", cert.scale),
        format!("valid={}", cert.valid),
        format!("theta_certified={}", opt(cert.theta_certified)),
        format!("iterations={}", cert.trace.iterations),
        format!("final_objective={:.17e}", cert.trace.final_objective),
        format!("fan_delta={}", opt(cert.fan_delta)),
        format!("fan_residual={}", opt(cert.fan_residual)),
        format!("transformed_norm={}", opt(cert.transformed_norm)),
    ];
    std::fs::write(dir.join(SUMMARY), lines.join("\n") + "\n")?;
    Ok(())
}

pub fn read_certificate_dir(dir: &Path) -> Result<(FormPair, Certificate)> {
    let fp = read_pair_dir(dir)?;
    let meta = parse_meta(&std::fs::read_to_string(dir.join(SUMMARY))?)?;
    let field = |k: &str| meta.get(k).map(String::as_str).ok_or_else(|| Error::Parse(format!("certificate file lacks `{k}`")));
    let float = |k: &str| -> Result<f64> { field(k)?.parse().map_err(|e| Error::Parse(format!("{k}: {e}"))) };
    let maybe = |k: &str| -> Result<Option<f64>> {
        match meta.get(k).map(String::as_str) {
            None | Some("NA") => Ok(None),
            Some(s) => s.parse().map(Some).map_err(|e| Error::Parse(format!("{k}: {e}"))),
        }
    };
    let kind = CertificateKind::parse(field("kind")?).ok_or_else(|| Error::Parse("unknown certificate kind".into()))?;
    let witness = HermitianMatrix::new(read_matrix(&dir.join(WITNESS))?)?;
    let cert = Certificate {
        kind,
        witness,
        margin: float("margin")?,
        cond: float("cond")?,
        scale: float("scale")?,
        valid: field("valid")? == "true",
        theta_certified: maybe("theta_certified")?,
        trace: SolverTrace {
            iterations: field("iterations")?.parse().map_err(|e| Error::Parse(format!("iterations: {e}")))?,
            final_objective: float("final_objective")?,
            best_t: Vec::new(),
        },
        fan_delta: maybe("fan_delta")?,
        fan_residual: maybe("fan_residual")?,
        transformed_norm: maybe("transformed_norm")?,
    };
    Ok((fp, cert))
}
