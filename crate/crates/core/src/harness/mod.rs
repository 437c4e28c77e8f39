//! Sweep configuration, CSV output, certificate files and the command-line
//! runner.

pub mod certio;
pub mod cli;
pub mod config;
pub mod row;
pub mod sweep;

pub use certio::{read_certificate_dir, write_certificate_dir};
pub use config::SweepConfig;
pub use row::{kappa_by_dim, parse_csv, SweepRow};
pub use sweep::{run_instance, run_sweep, SweepOutcome, THREADS_ENV};
