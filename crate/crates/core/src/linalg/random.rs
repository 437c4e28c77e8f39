//! Seeded random matrices. All generators draw from `ChaCha8Rng` in a fixed
//! order so equal seeds give bitwise-equal output.

use super::matrix::{ComplexMatrix, HermitianMatrix, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type LabRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> LabRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_normal(rng: &mut LabRng) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Matrix with i.i.d. standard complex Gaussian entries.
pub fn random_complex(rng: &mut LabRng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

pub fn random_real(rng: &mut LabRng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| C64::new(rng.sample(StandardNormal), 0.0))
}

pub fn random_hermitian(rng: &mut LabRng, n: usize) -> HermitianMatrix {
    HermitianMatrix::symmetrized(&random_complex(rng, n, n))
}

pub fn random_unit_vector(rng: &mut LabRng, n: usize) -> Vec<C64> {
    let mut v: Vec<C64> = (0..n).map(|_| complex_normal(rng)).collect();
    super::norms::normalize(&mut v);
    v
}

/// Haar-distributed unitary: Gram–Schmidt (applied twice) on a Gaussian
/// matrix, with the phase of each R diagonal absorbed.
pub fn random_unitary(rng: &mut LabRng, n: usize) -> ComplexMatrix {
    orthonormalize_columns(&random_complex(rng, n, n))
}

/// Real orthogonal matrix drawn the same way from a real Gaussian matrix.
pub fn random_orthogonal(rng: &mut LabRng, n: usize) -> ComplexMatrix {
    orthonormalize_columns(&random_real(rng, n, n))
}

fn orthonormalize_columns(g: &ComplexMatrix) -> ComplexMatrix {
    let n = g.cols();
    let mut q: Vec<Vec<C64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.column(j);
        for _ in 0..2 {
            for qk in &q {
                let c: C64 = qk.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(qk) {
                    *vi -= c * qi;
                }
            }
        }
        super::norms::normalize(&mut v);
        q.push(v);
    }
    let mut out = ComplexMatrix::zeros(g.rows(), n);
    for (j, col) in q.iter().enumerate() {
        out.set_column(j, col);
    }
    out
}

/// `V diag(d) V*` symmetrized.
pub fn with_spectrum(basis: &ComplexMatrix, d: &[f64]) -> HermitianMatrix {
    let dc: Vec<C64> = d.iter().map(|&x| C64::new(x, 0.0)).collect();
    HermitianMatrix::symmetrized(&(&basis.scale_columns(&dc) * &basis.adjoint()))
}

/// Log-uniform spectrum on `[lo, hi]`, drawn in order.
pub fn log_uniform(rng: &mut LabRng, n: usize, lo: f64, hi: f64) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|_| (a + (b - a) * rng.random::<f64>()).exp()).collect()
}

/// Positive matrix with spectrum log-uniform in `[1/cond, 1]`, extremes
/// pinned so the condition number is exactly `cond` (for `n >= 2`).
pub fn random_positive(rng: &mut LabRng, n: usize, cond: f64) -> HermitianMatrix {
    let basis = random_unitary(rng, n);
    let mut d = log_uniform(rng, n, 1.0 / cond, 1.0);
    if n >= 2 {
        d[0] = 1.0;
        d[n - 1] = 1.0 / cond;
    }
    with_spectrum(&basis, &d)
}
