//! Similarity witnesses of all four kinds, written to disk and replayed.

use katolab::certificates::{
    accretive_reweight, contraction_similarity, fan_check, sector_integral_s, spectral_angle, validate_certificate,
    SectorQuadrature, ValidationTarget,
};
use katolab::diagnostics::cayley_transform;
use katolab::form::{assemble_bundle, make_form_pair};
use katolab::harness::{read_certificate_dir, write_certificate_dir};
use katolab::linalg::matrix::ComplexMatrix;

fn main() -> katolab::Result<()> {
    let t = ComplexMatrix::from_real_rows(&[[0.0, 0.8, 0.0], [0.8, 0.0, 0.3], [0.0, 0.3, 0.2]]);
    let q = ComplexMatrix::from_real_diag(&[1.0, 20.0, 400.0]);
    let fp = make_form_pair(&t, &q, "cert-demo")?;

    let rw = accretive_reweight(&fp, 3000, 0)?;
    println!("accretive_reweight: valid {} margin {:.3e} cond {:.3e} theta {:?}", rw.valid, rw.margin, rw.cond, rw.theta_certified);

    let theta_a = spectral_angle(&assemble_bundle(&fp)?.a_op)?;
    let quad = SectorQuadrature::new(0.5 * (theta_a + std::f64::consts::FRAC_PI_2));
    match sector_integral_s(&fp, &quad) {
        Ok(c) => println!("sector_integral:    valid {} margin {:.3e} cond {:.3e}", c.valid, c.margin, c.cond),
        Err(e) => println!("sector_integral:    {e}"),
    }

    let c = cayley_transform(&fp)?;
    let ct = contraction_similarity(&c, 3000, 0)?;
    println!("contraction:        valid {} ||P^1/2 C P^-1/2|| = {:.9}", ct.valid, ct.transformed_norm.unwrap_or(f64::NAN));
    let fan = fan_check(&fp)?;
    println!("fan:                valid {} delta {:.3e} residual {:.1e}", fan.valid, fan.fan_delta.unwrap_or(0.0), fan.fan_residual.unwrap_or(0.0));

    let dir = std::env::temp_dir().join("katolab-certificate-example");
    write_certificate_dir(&dir, &fp, &rw)?;
    let (pair, mut cert) = read_certificate_dir(&dir)?;
    println!("replayed from {}: {:?}", dir.display(), validate_certificate(&cert, ValidationTarget::Form(&pair))?.valid);
    cert.witness = katolab::linalg::matrix::HermitianMatrix::identity(3);
    println!("tampered witness:   {:?}", validate_certificate(&cert, ValidationTarget::Form(&pair))?.valid);
    Ok(())
}
