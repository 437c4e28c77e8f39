//! Kato constants for symmetric, commuting and general pairs.

use katolab::diagnostics::kato::{kato_constants, kato_constants_direct};
use katolab::factory::{gen_commuting, Basis, SpectrumSpec};
use katolab::form::make_form_pair;
use katolab::linalg::matrix::ComplexMatrix;
use katolab::linalg::random::{random_hermitian, random_positive, seeded_rng};

fn main() -> katolab::Result<()> {
    let mut rng = seeded_rng(1);
    let q = random_positive(&mut rng, 32, 1e8);
    let sym = make_form_pair(&ComplexMatrix::zeros(32, 32), q.matrix(), "symmetric")?;
    println!("T = 0, cond(Q) = 1e8:          kappa = {:.12}", kato_constants(&sym)?.kappa);

    let t = [0.0, 1.0];
    let diag = gen_commuting(2, 0, &SpectrumSpec::Explicit(t.to_vec()), &SpectrumSpec::Explicit(vec![1.0, 7.0]), Basis::Identity)?;
    let k = kato_constants(&diag)?;
    println!("T = diag(0, 1), Q = diag(1, 7): c- = {:.6}, c+ = {:.6}, kappa = {:.6} (2^(1/4) = {:.6})", k.c_minus, k.c_plus, k.kappa, 2f64.powf(0.25));

    let t = random_hermitian(&mut rng, 6);
    let q = random_positive(&mut rng, 6, 1e3);
    let fp = make_form_pair(t.matrix(), q.matrix(), "general")?;
    let graded = kato_constants(&fp)?;
    let direct = kato_constants_direct(&fp)?;
    println!("general 6x6: kappa graded {:.12}, direct {:.12}", graded.kappa, direct.kappa);
    Ok(())
}
