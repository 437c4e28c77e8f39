//! Schur form, principal square root and singular values of a random matrix.

use katolab::linalg::random::{random_complex, seeded_rng};
use katolab::linalg::{complex_schur, singular_values, spectral_norm, sqrtm_principal};

fn main() -> katolab::Result<()> {
    let mut rng = seeded_rng(7);
    let m = random_complex(&mut rng, 6, 6).shift_diag(katolab::linalg::C64::new(4.0, 0.0));

    let schur = complex_schur(&m)?;
    let back = schur.from_basis(&schur.r);
    println!("Schur residual  ||U R U* - M||_F = {:.3e}", (&back - &m).frobenius_norm());
    for (k, l) in schur.eigenvalues().iter().enumerate() {
        println!("  lambda_{k} = {:+.6} {:+.6}i", l.re, l.im);
    }

    let b = sqrtm_principal(&m)?;
    let res = (&(&b * &b) - &m).frobenius_norm() / m.frobenius_norm();
    println!("sqrtm residual  ||B^2 - M|| / ||M|| = {res:.3e}");

    let s = singular_values(&m)?;
    println!("singular values {:?}", s.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>());
    println!("spectral norm   {:.6} (s_1 = {:.6})", spectral_norm(&m)?, s[0]);
    Ok(())
}
