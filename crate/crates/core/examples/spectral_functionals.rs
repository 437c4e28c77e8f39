//! Schatten norms, triangularity partial sums and divergence diagnostics.

use katolab::linalg::matrix::ComplexMatrix;
use katolab::spectral::{divergence_diagnostic, prescribe_decay, schatten_norm, triangularity_functional, DecayKind};

fn main() -> katolab::Result<()> {
    let d = ComplexMatrix::from_real_diag(&[1.0, 0.5, 0.25]);
    for p in [1.0, 2.0, 4.0] {
        println!("||diag(1, 1/2, 1/4)||_S{p} = {:.6}", schatten_norm(&d, p)?);
    }
    for kind in [DecayKind::Power(2.0), DecayKind::Geometric(0.5), DecayKind::ReciprocalLog] {
        let seq = prescribe_decay(kind, 1024)?;
        let tri = triangularity_functional(&ComplexMatrix::from_real_diag(&seq.values()[..64]))?;
        let div = divergence_diagnostic(&seq, 1024)?;
        println!(
            "{:<16} sum s_n/(n+1) (n <= 64) = {:.6}   sum a_n/n at {:?} -> slope {:.3e} ({:?})",
            kind.to_string(),
            tri.partial_sum,
            div.checkpoints.iter().map(|(n, s)| format!("{n}:{s:.4}")).collect::<Vec<_>>(),
            div.log_slope,
            div.class
        );
    }
    Ok(())
}
