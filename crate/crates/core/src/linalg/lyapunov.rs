//! Sylvester, Lyapunov and Stein equations by the complex Bartels–Stewart
//! method.

use super::matrix::{ComplexMatrix, C64, ONE};
use super::schur::complex_schur;
use crate::error::{Error, Result};

/// Solve `A X + X B = F`.
pub fn solve_sylvester(a: &ComplexMatrix, b: &ComplexMatrix, f: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (m, n) = (a.rows(), b.rows());
    if f.rows() != m || f.cols() != n {
        return Err(Error::DimensionMismatch("Sylvester right-hand side has the wrong shape".into()));
    }
    let sa = complex_schur(a)?;
    let sb = complex_schur(b)?;
    let (r, s) = (&sa.r, &sb.r);
    let g = &(&sa.u.adjoint() * f) * &sb.u;
    let scale = r.max_abs().max(s.max_abs()).max(f64::MIN_POSITIVE);
    let mut y = ComplexMatrix::zeros(m, n);
    for j in 0..n {
        let mut rhs = g.column(j);
        for k in 0..j {
            let skj = s[(k, j)];
            if skj != C64::new(0.0, 0.0) {
                for i in 0..m {
                    rhs[i] -= y[(i, k)] * skj;
                }
            }
        }
        // (R + s_jj I) y_j = rhs, upper triangular.
        let sjj = s[(j, j)];
        for i in (0..m).rev() {
            let mut acc = rhs[i];
            for k in i + 1..m {
                acc -= r[(i, k)] * y[(k, j)];
            }
            let d = r[(i, i)] + sjj;
            if d.norm() <= 1e-14 * scale {
                return Err(Error::NumericalFailure("Sylvester operator is singular (spectra of A and -B meet)".into()));
            }
            y[(i, j)] = acc / d;
        }
    }
    Ok(&(&sa.u * &y) * &sb.u.adjoint())
}

/// Solve `A* X + X A = F`.
pub fn solve_lyapunov(a: &ComplexMatrix, f: &ComplexMatrix) -> Result<ComplexMatrix> {
    solve_sylvester(&a.adjoint(), a, f)
}

/// Solve the Stein equation `X - C* X C = F`; requires `1 - conj(l_i) l_j != 0`
/// for all eigenvalues of `C` (e.g. spectral radius below one).
pub fn solve_stein(c: &ComplexMatrix, f: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = c.rows();
    let sc = complex_schur(c)?;
    let r = &sc.r;
    let rh = r.adjoint();
    let g = sc.to_basis(f);
    let mut y = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        // h = sum_{l<j} y_l R_lj; rhs = g_j + R* h.
        let mut h = vec![C64::new(0.0, 0.0); n];
        for l in 0..j {
            let rlj = r[(l, j)];
            for i in 0..n {
                h[i] += y[(i, l)] * rlj;
            }
        }
        let rhs: Vec<C64> = g.column(j).iter().zip(rh.mul_vec(&h)).map(|(a, b)| a + b).collect();
        // (I - r_jj R*) y_j = rhs, lower triangular.
        let rjj = r[(j, j)];
        let mut col = vec![C64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = rhs[i];
            for k in 0..i {
                acc += rjj * rh[(i, k)] * col[k];
            }
            let d = ONE - rjj * rh[(i, i)];
            if d.norm() <= 1e-14 {
                return Err(Error::NumericalFailure("Stein operator is singular (eigenvalue pair with conj(l_i) l_j = 1)".into()));
            }
            col[i] = acc / d;
        }
        y.set_column(j, &col);
    }
    Ok(sc.from_basis(&y))
}
