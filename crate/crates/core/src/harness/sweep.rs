use super::certio::write_certificate_dir;
use super::config::SweepConfig;
use super::row::{kappa_data_path, render_csv, render_kappa_data, render_timing, timing_path, write_atomic, SweepRow};
use crate::certificates::{
    accretive_reweight, contraction_similarity, fan_check, sector_integral_s, Certificate, CertificateKind, SectorQuadrature,
};
use crate::diagnostics::{cayley_transform, diagnose_pair};
use crate::error::{Error, Result};
use crate::factory::verify_singular_value_equivalences;
use crate::form::FormPair;
use crate::spectral::triangularity_functional;
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "KATOLAB_THREADS";

pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::Config(format!("{THREADS_ENV} must be a positive integer, got `{v}`")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))
}

pub fn compute_certificate(
    fp: &FormPair,
    kind: CertificateKind,
    max_iter: usize,
    seed: u64,
    theta_prime: Option<f64>,
) -> Result<Certificate> {
    match kind {
        CertificateKind::AccretiveReweight => accretive_reweight(fp, max_iter, seed),
        CertificateKind::SectorIntegralS => {
            let tp = theta_prime.ok_or_else(|| Error::BadParameter("sector_integral needs theta_prime".into()))?;
            sector_integral_s(fp, &SectorQuadrature::new(tp))
        }
        CertificateKind::ContractionSimilarity => contraction_similarity(&cayley_transform(fp)?, max_iter, seed),
        CertificateKind::FanForm => fan_check(fp),
    }
}

/// Directory holding the certificate of one row.
pub fn certificate_dir(output: &Path, family: &str, dim: usize, seed: u64) -> PathBuf {
    let name = output.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    output.with_file_name(format!("{name}.certs")).join(format!("{family}_n{dim}_s{seed}"))
}

/// Evaluate one `(dim, seed)` instance. Failures are recorded in the row.
pub fn run_instance(cfg: &SweepConfig, dim: usize, seed: u64) -> (SweepRow, Option<(FormPair, Certificate)>) {
    let start = Instant::now();
    let mut row = SweepRow {
        experiment: cfg.experiment.clone(),
        family: cfg.family.name().to_string(),
        dim,
        seed,
        ..Default::default()
    };
    let mut cert_out = None;
    match cfg.spec(dim, seed).generate() {
        Err(e) => row.errors.push(format!("generate: {e}")),
        Ok(g) => {
            let fp = g.pair;
            row.m_used = g.m_used;
            if let Some(model) = &g.model {
                if let Err(e) = verify_singular_value_equivalences(&fp, model) {
                    row.errors.push(format!("equivalence: {e}"));
                }
            }
            row.beta = Some(fp.beta());
            let mut opts = cfg.diagnostics.clone();
            opts.seed = opts.seed.wrapping_add(seed);
            match diagnose_pair(&fp, &opts) {
                Ok(r) => {
                    row.c_minus = Some(r.c_minus);
                    row.c_plus = Some(r.c_plus);
                    row.kappa = Some(r.kappa);
                    row.ritt_const = r.ritt_const;
                    row.power_bound = r.power_bound;
                    row.ritt_discrete = r.ritt_discrete;
                    row.poly_bound_lb = r.poly_bound_lb;
                    row.hinfty_lb = r.hinfty_lb;
                }
                Err(e) => row.errors.push(format!("diagnose: {e}")),
            }
            if cfg.triangularity {
                match triangularity_functional(fp.t()) {
                    Ok(t) => row.triangularity_partial = Some(t.partial_sum),
                    Err(e) => row.errors.push(format!("triangularity: {e}")),
                }
            }
            if let Some(kind) = cfg.certificate {
                match compute_certificate(&fp, kind, cfg.cert_max_iter, seed, cfg.theta_prime) {
                    Ok(c) => {
                        row.cert_margin = Some(c.margin);
                        row.cert_cond = Some(c.cond);
                        row.cert_scale = Some(c.scale);
                        if !c.valid {
                            row.errors.push(format!("certificate: invalid {kind} witness"));
                        }
                        cert_out = Some((fp, c));
                    }
                    Err(e) => {
                        if let Error::NoCertificateFound { best_margin, scale } = e {
                            row.cert_margin = Some(best_margin);
                            row.cert_scale = Some(scale);
                        }
                        row.errors.push(format!("certificate: {e}"));
                    }
                }
            }
        }
    }
    row.runtime_ms = Some(start.elapsed().as_millis());
    (row, cert_out)
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub csv: PathBuf,
    pub timing: PathBuf,
    pub kappa_data: PathBuf,
}

/// Evaluate every `(dim, seed)` pair, then write the CSV table, the timing
/// sidecar, the `(dim, kappa)` data file and one directory per certificate.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome> {
    cfg.validate()?;
    let jobs: Vec<(usize, u64)> = cfg.dims.iter().flat_map(|&d| cfg.seeds.iter().map(move |&s| (d, s))).collect();
    let pool = thread_pool()?;
    let mut results: Vec<(SweepRow, Option<(FormPair, Certificate)>)> =
        pool.install(|| jobs.par_iter().map(|&(d, s)| run_instance(cfg, d, s)).collect());
    results.sort_by_key(|(r, _)| (r.dim, r.seed));
    for (row, cert) in &mut results {
        if let Some((fp, c)) = cert {
            let dir = certificate_dir(&cfg.output, &row.family, row.dim, row.seed);
            if let Err(e) = write_certificate_dir(&dir, fp, c) {
                row.errors.push(format!("write certificate: {e}"));
            }
        }
    }
    let rows: Vec<SweepRow> = results.into_iter().map(|(r, _)| r).collect();
    write_atomic(&cfg.output, &render_csv(&rows))?;
    let timing = timing_path(&cfg.output);
    write_atomic(&timing, &render_timing(&rows))?;
    let kappa_data = kappa_data_path(&cfg.output);
    write_atomic(&kappa_data, &render_kappa_data(&rows))?;
    Ok(SweepOutcome { rows, csv: cfg.output.clone(), timing, kappa_data })
}
