use super::matrix::{ComplexMatrix, C64, ZERO};
use super::schur::{complex_schur, Schur};
use crate::error::{Error, Result};

/// Distance from `z` to the closed half-line `(-inf, 0]`.
pub fn distance_to_cut(z: C64) -> f64 {
    if z.re >= 0.0 {
        z.norm()
    } else {
        z.im.abs()
    }
}

/// Principal square root of an upper-triangular matrix by the column
/// recurrence `U_ij = (R_ij - sum_k U_ik U_kj) / (U_ii + U_jj)`.
pub fn sqrtm_triangular(r: &ComplexMatrix) -> ComplexMatrix {
    let n = r.rows();
    let mut u = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        u[(j, j)] = r[(j, j)].sqrt();
        for i in (0..j).rev() {
            let mut s = ZERO;
            for k in i + 1..j {
                s += u[(i, k)] * u[(k, j)];
            }
            u[(i, j)] = (r[(i, j)] - s) / (u[(i, i)] + u[(j, j)]);
        }
    }
    u
}

/// Principal square root: every eigenvalue of the result has positive real
/// part. Fails with `SpectrumOnCut` when an eigenvalue is within
/// `1e-12 ||M||_F` of `(-inf, 0]`.
pub fn sqrtm_principal(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let schur = complex_schur(m)?;
    sqrtm_from_schur(&schur, m.frobenius_norm())
}

pub fn sqrtm_from_schur(schur: &Schur, norm: f64) -> Result<ComplexMatrix> {
    let tol = 1e-12 * norm.max(f64::MIN_POSITIVE);
    for l in schur.eigenvalues() {
        if distance_to_cut(l) <= tol {
            return Err(Error::SpectrumOnCut { re: l.re, im: l.im });
        }
    }
    Ok(schur.from_basis(&sqrtm_triangular(&schur.r)))
}
