//! Kernels on upper-triangular matrices (Schur factors) and matrix-free
//! norm estimation.

use super::matrix::{ComplexMatrix, C64, ZERO};
use super::norms::{norm2, normalize};

/// Solve `R x = b`.
pub fn solve_upper(r: &ComplexMatrix, b: &[C64]) -> Vec<C64> {
    let n = r.rows();
    let mut x = b.to_vec();
    for i in (0..n).rev() {
        let row = r.row(i);
        let s: C64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(a, b)| a * b).sum();
        x[i] = (x[i] - s) / row[i];
    }
    x
}

/// Inverse of an upper-triangular matrix.
pub fn inverse_upper(r: &ComplexMatrix) -> ComplexMatrix {
    let n = r.rows();
    let mut inv = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut e = vec![ZERO; n];
        e[j] = C64::new(1.0, 0.0);
        inv.set_column(j, &solve_upper(r, &e));
    }
    inv
}

/// Solve `(z I - R) x = b`.
pub fn solve_shifted(r: &ComplexMatrix, z: C64, b: &[C64]) -> Vec<C64> {
    let n = r.rows();
    let mut x = b.to_vec();
    for i in (0..n).rev() {
        let row = r.row(i);
        let s: C64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(a, b)| a * b).sum();
        x[i] = (x[i] + s) / (z - row[i]);
    }
    x
}

/// Solve `(z I - R)* x = b`.
pub fn solve_shifted_adjoint(r: &ComplexMatrix, z: C64, b: &[C64]) -> Vec<C64> {
    let n = r.rows();
    let mut x = b.to_vec();
    for i in 0..n {
        let xi = x[i] / (z - r[(i, i)]).conj();
        x[i] = xi;
        let row = r.row(i);
        for k in i + 1..n {
            x[k] += row[k].conj() * xi;
        }
    }
    x
}

/// `R v` for upper-triangular `R`.
pub fn upper_mul_vec(r: &ComplexMatrix, v: &[C64]) -> Vec<C64> {
    (0..r.rows()).map(|i| r.row(i)[i..].iter().zip(&v[i..]).map(|(a, b)| a * b).sum()).collect()
}

/// `R* v` for upper-triangular `R`.
pub fn upper_adjoint_mul_vec(r: &ComplexMatrix, v: &[C64]) -> Vec<C64> {
    let n = r.rows();
    let mut out = vec![ZERO; n];
    for (i, &vi) in v.iter().enumerate() {
        for (o, a) in out[i..].iter_mut().zip(&r.row(i)[i..]) {
            *o += a.conj() * vi;
        }
    }
    out
}

/// Power iteration for `||X||_2` given `v -> X v` and `w -> X* w`.
///
/// `start` is used as the initial vector and receives the final iterate,
/// so neighbouring evaluations can be warm-started. The estimate is
/// `||X x||` for a unit `x`, hence never above the true norm.
pub fn norm_estimate(
    n: usize,
    apply: impl Fn(&[C64]) -> Vec<C64>,
    apply_adjoint: impl Fn(&[C64]) -> Vec<C64>,
    start: &mut Vec<C64>,
    max_iter: usize,
    rel_tol: f64,
) -> f64 {
    if start.len() != n || norm2(start) == 0.0 {
        *start = (0..n).map(|k| C64::new(1.0, 0.37 * k as f64 + 0.1)).collect();
    }
    normalize(start);
    let mut est: f64 = 0.0;
    for _ in 0..max_iter.max(1) {
        let y = apply(start);
        let ny = norm2(&y);
        if ny == 0.0 || !ny.is_finite() {
            return ny;
        }
        let prev = est;
        est = est.max(ny);
        let mut z = apply_adjoint(&y);
        normalize(&mut z);
        *start = z;
        if (ny - prev).abs() <= rel_tol * ny {
            break;
        }
    }
    est
}
