use crate::error::{Error, Result};
use crate::form::{make_form_pair, FormPair};
use crate::linalg::matrix::{ComplexMatrix, HermitianMatrix, C64};
use crate::linalg::random::{random_unitary, seeded_rng, with_spectrum};
use crate::linalg::PositiveMatrix;
use crate::spectral::DecaySequence;
use rand::Rng;

/// Number of times the embedding scale is halved before giving up.
pub const MAX_HALVINGS: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerturbationTarget {
    /// `T -> T + Delta`.
    ImaginaryPart,
    /// Real part `S = I + Delta`, expressed in its own orthonormal frame.
    RealPart,
    /// `Q -> sym((I + Delta) Q)`.
    Embedding,
}

/// `Delta` with singular values `eps * a_k`; a decay shorter than the
/// dimension gives a low-rank perturbation.
#[derive(Clone, Debug)]
pub struct DeltaSpec {
    pub decay: DecaySequence,
    pub eps: f64,
    pub seed: u64,
}

fn padded(spec: &DeltaSpec, n: usize, eps: f64) -> Vec<f64> {
    (0..n).map(|k| spec.decay.values().get(k).map_or(0.0, |a| eps * a)).collect()
}

/// Hermitian `V diag(+-eps a_k) V*`.
pub fn hermitian_delta(spec: &DeltaSpec, n: usize) -> HermitianMatrix {
    let mut rng = seeded_rng(spec.seed);
    let v = random_unitary(&mut rng, n);
    let d: Vec<f64> = padded(spec, n, spec.eps)
        .into_iter()
        .map(|a| if rng.random_bool(0.5) { a } else { -a })
        .collect();
    with_spectrum(&v, &d)
}

/// General `V1 diag(eps a_k) V2*`.
pub fn general_delta(spec: &DeltaSpec, n: usize, eps: f64) -> ComplexMatrix {
    let mut rng = seeded_rng(spec.seed);
    let v1 = random_unitary(&mut rng, n);
    let v2 = random_unitary(&mut rng, n);
    let d: Vec<C64> = padded(spec, n, eps).into_iter().map(|a| C64::new(a, 0.0)).collect();
    &v1.scale_columns(&d) * &v2.adjoint()
}

/// Perturbed pair and the scale actually used.
pub fn gen_perturbation(base: &FormPair, target: PerturbationTarget, delta: &DeltaSpec) -> Result<(FormPair, f64)> {
    if !(delta.eps >= 0.0 && delta.eps.is_finite()) {
        return Err(Error::BadParameter(format!("perturbation scale must be >= 0, got {}", delta.eps)));
    }
    if delta.eps == 0.0 {
        return Ok((base.clone(), 0.0));
    }
    let n = base.dim();
    let q = base.q().hermitian().matrix();
    let label = format!("{}+{}", base.label(), target_name(target));
    match target {
        PerturbationTarget::ImaginaryPart => {
            let t = base.t().matrix() + hermitian_delta(delta, n).matrix();
            Ok((make_form_pair(&t, q, &label)?, delta.eps))
        }
        PerturbationTarget::RealPart => {
            let s = PositiveMatrix::new(HermitianMatrix::symmetrized(&hermitian_delta(delta, n).shift_diag(C64::new(1.0, 0.0))))?;
            let r = s.sqrt();
            let t = &(r.matrix() * base.t().matrix()) * r.matrix();
            let qq = &(r.matrix() * q) * r.matrix();
            Ok((make_form_pair(&t, &qq, &label)?, delta.eps))
        }
        PerturbationTarget::Embedding => {
            let mut eps = delta.eps;
            let mut last = None;
            for _ in 0..=MAX_HALVINGS {
                let d = general_delta(delta, n, eps).shift_diag(C64::new(1.0, 0.0));
                let qq = HermitianMatrix::symmetrized(&(&d * q));
                match make_form_pair(base.t().matrix(), qq.matrix(), &label) {
                    Ok(fp) => return Ok((fp, eps)),
                    Err(e @ Error::NotPositive { .. }) => last = Some(e),
                    Err(e) => return Err(e),
                }
                eps *= 0.5;
            }
            Err(last.expect("loop ran"))
        }
    }
}

pub fn target_name(t: PerturbationTarget) -> &'static str {
    match t {
        PerturbationTarget::ImaginaryPart => "imaginary_part",
        PerturbationTarget::RealPart => "real_part",
        PerturbationTarget::Embedding => "embedding",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::singular_values;
    use crate::spectral::{prescribe_decay, DecayKind};

    fn base() -> FormPair {
        let t = ComplexMatrix::from_real_diag(&[1.0, -2.0, 0.5, 0.0]);
        make_form_pair(&t, &ComplexMatrix::from_real_diag(&[1.0, 0.1, 2.0, 0.5]), "b").unwrap()
    }

    #[test]
    fn zero_scale_returns_base() {
        let spec = DeltaSpec { decay: prescribe_decay(DecayKind::Geometric(0.5), 4).unwrap(), eps: 0.0, seed: 1 };
        let (fp, _) = gen_perturbation(&base(), PerturbationTarget::Embedding, &spec).unwrap();
        assert_eq!(fp.t(), base().t());
        assert_eq!(fp.q().hermitian(), base().q().hermitian());
    }

    #[test]
    fn imaginary_part_delta_has_prescribed_singular_values() {
        let spec = DeltaSpec { decay: prescribe_decay(DecayKind::Geometric(0.5), 4).unwrap(), eps: 0.1, seed: 2 };
        let (fp, _) = gen_perturbation(&base(), PerturbationTarget::ImaginaryPart, &spec).unwrap();
        let s = singular_values(&(fp.t().matrix() - base().t().matrix())).unwrap();
        for (a, b) in s.iter().zip([0.1, 0.05, 0.025, 0.0125]) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
