//! Small in-process sweep over Schatten-class pairs, printing the CSV.

use katolab::factory::Family;
use katolab::harness::{run_sweep, SweepConfig};

fn main() -> katolab::Result<()> {
    let mut cfg = SweepConfig::defaults("example", Family::Schatten);
    cfg.dims = vec![8, 16, 32];
    cfg.seeds = vec![1, 2];
    cfg.triangularity = true;
    cfg.params.insert("decay".into(), "power:2".into());
    cfg.output = std::env::temp_dir().join("katolab-example-sweep.csv");
    let out = run_sweep(&cfg)?;
    print!("{}", std::fs::read_to_string(&out.csv)?);
    print!("{}", std::fs::read_to_string(&out.kappa_data)?);
    Ok(())
}
