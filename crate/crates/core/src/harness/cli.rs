//! Command-line front end: `gen`, `diagnose`, `certify`, `sweep`.
//!
//! Exit codes: 0 ok, 1 usage, 2 validation, 3 no certificate.

use super::certio::{read_certificate_dir, write_certificate_dir};
use super::config::SweepConfig;
use super::row::SweepRow;
use super::sweep::{compute_certificate, run_sweep};
use crate::certificates::{validate_certificate, CertificateKind, ValidationTarget};
use crate::diagnostics::{diagnose_pair, DiagnosticOptions};
use crate::error::{Error, Result};
use crate::factory::{Family, GeneratorSpec};
use crate::form::{read_pair_dir, write_pair_dir};
use crate::spectral::triangularity_functional;
use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "katolab", version, about = "Kato square-root diagnostics for finite sectorial forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a pair and write it as a directory (T.mat, Q.mat, meta).
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Family parameter, `key=value`; repeatable.
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the diagnostics report of a pair directory and a CSV row.
    Diagnose {
        pair: PathBuf,
        /// Only the Kato constants.
        #[arg(long)]
        kato_only: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compute a certificate for a pair, or replay a stored one.
    Certify {
        pair: PathBuf,
        /// accretive_reweight, sector_integral, contraction or fan.
        #[arg(long, default_value = "accretive_reweight")]
        kind: String,
        #[arg(long, default_value_t = 2000)]
        max_iter: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sector opening for sector_integral.
        #[arg(long)]
        theta_prime: Option<f64>,
        /// Output directory (default `<pair>/cert_<kind>`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Validate an existing certificate directory instead of solving.
        #[arg(long, conflicts_with = "out")]
        replay: Option<PathBuf>,
    },
    /// Run a sweep from a config file.
    Sweep {
        config: PathBuf,
        /// Override the configured output path.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Parse arguments and run; returns the process exit status.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn parse_params(raw: &[String]) -> Result<Vec<(String, String)>> {
    raw.iter()
        .map(|p| {
            p.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::Config(format!("--param expects key=value, got `{p}`")))
        })
        .collect()
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Gen { family, dim, seed, params, out } => {
            let family: Family = family.parse().map_err(|e: Error| Error::Config(e.to_string()))?;
            let mut spec = GeneratorSpec::new(family, dim, seed);
            for (k, v) in parse_params(&params)? {
                spec = spec.with_param(&k, v);
            }
            let g = spec.generate()?;
            write_pair_dir(&out, &g.pair)?;
            println!("wrote {} (family {family}, dim {dim}, seed {seed}, beta {:.6e}, cond(Q) {:.6e})", out.display(), g.pair.beta(), g.pair.cond_q());
        }
        Command::Diagnose { pair, kato_only, seed } => {
            let fp = read_pair_dir(&pair)?;
            let mut opts = if kato_only { DiagnosticOptions::kato_only() } else { DiagnosticOptions::default() };
            opts.seed = seed;
            let r = diagnose_pair(&fp, &opts)?;
            println!("{r}");
            let row = SweepRow {
                experiment: "diagnose".into(),
                family: fp.meta().get("family").cloned().unwrap_or_else(|| "file".into()),
                dim: fp.dim(),
                seed: fp.meta().get("seed").and_then(|s| s.parse().ok()).unwrap_or(0),
                beta: Some(r.beta),
                c_minus: Some(r.c_minus),
                c_plus: Some(r.c_plus),
                kappa: Some(r.kappa),
                ritt_const: r.ritt_const,
                power_bound: r.power_bound,
                ritt_discrete: r.ritt_discrete,
                poly_bound_lb: r.poly_bound_lb,
                hinfty_lb: r.hinfty_lb,
                triangularity_partial: Some(triangularity_functional(fp.t())?.partial_sum),
                m_used: fp.meta().get("m_used").and_then(|s| s.parse().ok()),
                ..Default::default()
            };
            println!("{}", SweepRow::header());
            println!("{}", row.to_csv());
        }
        Command::Certify { pair, kind, max_iter, seed, theta_prime, out, replay } => {
            let kind = CertificateKind::parse(&kind).ok_or_else(|| Error::Config(format!("unknown certificate kind `{kind}`")))?;
            if let Some(dir) = replay {
                let (stored_pair, cert) = read_certificate_dir(&dir)?;
                let fp = if dir == pair { stored_pair } else { read_pair_dir(&pair)? };
                if cert.kind != kind {
                    return Err(Error::KindMismatch(format!("stored certificate is {}, requested {kind}", cert.kind)));
                }
                let v = validate_certificate(&cert, ValidationTarget::Form(&fp))?;
                println!(
                    "replay kind={kind} margin={:.6e} scale={:.6e} witness_positive={} valid={}",
                    v.margin, v.scale, v.witness_positive, v.valid
                );
                if !v.valid {
                    return Err(Error::NoCertificateFound { best_margin: v.margin, scale: v.scale });
                }
                return Ok(());
            }
            let fp = read_pair_dir(&pair)?;
            let cert = compute_certificate(&fp, kind, max_iter, seed, theta_prime)?;
            let dir = out.unwrap_or_else(|| pair.join(format!("cert_{kind}")));
            write_certificate_dir(&dir, &fp, &cert)?;
            println!(
                "certificate kind={kind} valid={} margin={:.6e} cond={:.6e} iterations={} dir={}",
                cert.valid,
                cert.margin,
                cert.cond,
                cert.trace.iterations,
                dir.display()
            );
            if !cert.valid {
                return Err(Error::NoCertificateFound { best_margin: cert.margin, scale: cert.scale });
            }
        }
        Command::Sweep { config, output } => {
            let mut cfg = SweepConfig::load(&config)?;
            if let Some(o) = output {
                cfg.output = o;
            }
            let out = run_sweep(&cfg)?;
            let failed = out.rows.iter().filter(|r| !r.errors.is_empty()).count();
            println!(
                "sweep {}: {} rows ({} with errors) -> {} (timing {}, kappa data {})",
                cfg.experiment,
                out.rows.len(),
                failed,
                out.csv.display(),
                out.timing.display(),
                out.kappa_data.display()
            );
        }
    }
    Ok(())
}
