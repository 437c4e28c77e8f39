//! Sampling lower bounds for polynomial and H-infinity calculus constants.

use crate::error::{Error, Result};
use crate::linalg::matrix::{ComplexMatrix, C64, ZERO};
use crate::linalg::random::{complex_normal, seeded_rng};
use crate::linalg::schur::complex_schur;
use crate::linalg::spectral_norm;
use crate::linalg::triangular::{inverse_upper, norm_estimate, upper_adjoint_mul_vec, upper_mul_vec};
use rand::Rng;
use std::f64::consts::PI;

/// Number of unit-circle samples used for `sup |p|`.
pub const CIRCLE_SAMPLES: usize = 4096;

/// Coefficients low degree first.
fn horner(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(ZERO, |acc, &a| acc * z + a)
}

/// `max_{|z| = 1} |p(z)|`: the maximum over `CIRCLE_SAMPLES` equispaced
/// points, refined by golden-section search around the largest samples.
pub fn circle_sup(coeffs: &[C64]) -> f64 {
    let m = CIRCLE_SAMPLES;
    let h = 2.0 * PI / m as f64;
    let f = |t: f64| horner(coeffs, C64::from_polar(1.0, t)).norm();
    let values: Vec<f64> = (0..m).map(|j| f(h * j as f64)).collect();
    let mut best = values.iter().copied().fold(0.0, f64::max);
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    for &j in order.iter().take(8) {
        let (mut a, mut b) = (h * j as f64 - h, h * j as f64 + h);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut x1 = b - g * (b - a);
        let mut x2 = a + g * (b - a);
        let (mut f1, mut f2) = (f(x1), f(x2));
        for _ in 0..60 {
            if f1 > f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = f(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = f(x2);
            }
        }
        best = best.max(f1).max(f2);
    }
    best
}

/// Polynomial of an upper-triangular matrix by Horner's rule.
fn poly_of_triangular(r: &ComplexMatrix, coeffs: &[C64]) -> ComplexMatrix {
    let n = r.rows();
    let mut acc = ComplexMatrix::zeros(n, n).shift_diag(*coeffs.last().unwrap());
    for &a in coeffs.iter().rev().skip(1) {
        acc = acc.upper_triangular_matmul(r).shift_diag(a);
    }
    acc
}

fn triangular_norm(x: &ComplexMatrix, small: bool) -> Result<f64> {
    if small {
        return spectral_norm(x);
    }
    let mut v = Vec::new();
    Ok(norm_estimate(x.rows(), |a| upper_mul_vec(x, a), |a| upper_adjoint_mul_vec(x, a), &mut v, 500, 1e-13))
}

const EXACT_DIM: usize = 16;

/// Lower bound for the best `M` in `||p(C)|| <= M sup_{|z|<=1} |p(z)|`.
///
/// Samples `trials` polynomials of degree `degree` with complex Gaussian
/// coefficients, plus the monomials `z^k` and Chebyshev polynomials `T_k`
/// for `k <= degree`.
pub fn polynomial_bound_lower(c: &ComplexMatrix, degree: usize, trials: usize, seed: u64) -> Result<f64> {
    if degree < 8 || trials < 100 {
        return Err(Error::BadParameter(format!("need degree >= 8 and trials >= 100, got {degree}, {trials}")));
    }
    let schur = complex_schur(c)?;
    let r = &schur.r;
    let small = c.rows() <= EXACT_DIM;
    let mut rng = seeded_rng(seed);
    let mut families: Vec<Vec<C64>> = Vec::new();
    families.push(vec![C64::new(1.0, 0.0)]);
    for k in 1..=degree {
        let mut mono = vec![ZERO; k + 1];
        mono[k] = C64::new(1.0, 0.0);
        families.push(mono);
    }
    // Chebyshev T_k via T_{k+1} = 2 z T_k - T_{k-1}.
    let mut prev = vec![C64::new(1.0, 0.0)];
    let mut cur = vec![ZERO, C64::new(1.0, 0.0)];
    for _ in 2..=degree {
        let mut next = vec![ZERO; cur.len() + 1];
        for (i, &a) in cur.iter().enumerate() {
            next[i + 1] += a * 2.0;
        }
        for (i, &a) in prev.iter().enumerate() {
            next[i] -= a;
        }
        prev = cur;
        cur = next;
        families.push(cur.clone());
    }
    for _ in 0..trials {
        let deg = rng.random_range(1..=degree);
        families.push((0..=deg).map(|_| complex_normal(&mut rng)).collect());
    }
    let mut best: f64 = 0.0;
    for coeffs in &families {
        let sup = circle_sup(coeffs);
        if sup == 0.0 {
            continue;
        }
        let val = triangular_norm(&poly_of_triangular(r, coeffs), small)? / sup;
        best = best.max(val);
    }
    Ok(best)
}

/// Lower bound for the `H^infty` calculus norm of a sectorial `A` on the
/// right half-plane, from Blaschke products
/// `b(z) = prod_j (z - a_j) / (z + conj(a_j))` with `Re a_j > 0`.
pub fn hinfty_lower(a_op: &ComplexMatrix, products: usize, factors: usize, seed: u64) -> Result<f64> {
    if products == 0 || factors == 0 {
        return Err(Error::BadParameter("need at least one product with one factor".into()));
    }
    let schur = complex_schur(a_op)?;
    let r = &schur.r;
    let n = r.rows();
    let eig = r.diag();
    let scale = eig.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let small = n <= EXACT_DIM;
    let mut rng = seeded_rng(seed);
    let mut best: f64 = 0.0;
    for _ in 0..products {
        let mut b = ComplexMatrix::identity(n);
        for _ in 0..factors {
            let mut pole = None;
            for _ in 0..=10 {
                let modulus = scale * 10f64.powf(rng.random_range(-3.0..3.0));
                let arg = rng.random_range(-0.499..0.499) * PI;
                let a = C64::from_polar(modulus, arg);
                if eig.iter().all(|&l| (l + a.conj()).norm() > 1e-12 * scale) {
                    pole = Some(a);
                    break;
                }
            }
            let a = pole.ok_or_else(|| {
                let l = eig[0];
                Error::SingularResolvent { re: -l.re, im: -l.im, cond: f64::INFINITY }
            })?;
            let num = r.shift_diag(-a);
            let den_inv = inverse_upper(&r.shift_diag(a.conj()));
            b = b.upper_triangular_matmul(&num.upper_triangular_matmul(&den_inv));
        }
        best = best.max(triangular_norm(&b, small)?);
    }
    Ok(best)
}
