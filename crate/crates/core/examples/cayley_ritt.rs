//! Cayley transform of a pair and its Ritt / power-boundedness constants.

use katolab::diagnostics::{cayley_transform, diagnose_pair, DiagnosticOptions};
use katolab::form::make_form_pair;
use katolab::linalg::random::{random_hermitian, random_positive, seeded_rng};
use katolab::linalg::schur::eigenvalues;

fn main() -> katolab::Result<()> {
    let mut rng = seeded_rng(3);
    let t = random_hermitian(&mut rng, 12).scale_real(0.5);
    let q = random_positive(&mut rng, 12, 1e4);
    let fp = make_form_pair(&t, q.matrix(), "ritt-demo")?;

    let c = cayley_transform(&fp)?;
    let rho = eigenvalues(&c)?.iter().map(|l| l.norm()).fold(0.0, f64::max);
    println!("spectral radius of C = {rho:.9}");

    let opts = DiagnosticOptions { hinfty: false, ..DiagnosticOptions::default() };
    let report = diagnose_pair(&fp, &opts)?;
    println!("{report}");
    Ok(())
}
