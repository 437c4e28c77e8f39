use crate::error::{Error, Result};
use crate::form::{make_form_pair, FormPair};
use crate::linalg::random::{random_positive, random_unitary, seeded_rng, with_spectrum};
use crate::spectral::DecaySequence;
use rand::Rng;

pub const DEFAULT_Q_COND: f64 = 1e6;

/// `T = V diag(+-a_k) V*` with random signs, and an independent random `Q`
/// with log-uniform spectrum of condition number `q_cond`.
pub fn gen_schatten(n: usize, seed: u64, decay: &DecaySequence, q_cond: f64) -> Result<FormPair> {
    if decay.len() < n {
        return Err(Error::BadParameter(format!("decay has {} terms, dimension is {n}", decay.len())));
    }
    if !(q_cond >= 1.0 && q_cond.is_finite()) {
        return Err(Error::BadParameter(format!("Q condition number must be >= 1, got {q_cond}")));
    }
    let mut rng = seeded_rng(seed);
    let v = random_unitary(&mut rng, n);
    let d: Vec<f64> = decay.values()[..n]
        .iter()
        .map(|&a| if rng.random_bool(0.5) { a } else { -a })
        .collect();
    let q = random_positive(&mut rng, n, q_cond);
    make_form_pair(with_spectrum(&v, &d).matrix(), q.matrix(), "schatten")
}
