use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, `P M = L U`.
#[derive(Clone, Debug)]
pub struct Lu {
    lu: ComplexMatrix,
    perm: Vec<usize>,
    norm_1: f64,
}

pub fn lu(m: &ComplexMatrix) -> Result<Lu> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("LU needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    let norm_1 = m.norm_1();
    let mut a = m.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let (p, pmax) = (k..n)
            .map(|i| (i, a[(i, k)].norm()))
            .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pmax == 0.0 {
            return Err(Error::NumericalFailure(format!("exactly singular pivot in column {k}")));
        }
        if p != k {
            perm.swap(p, k);
            for j in 0..n {
                let t = a[(k, j)];
                a[(k, j)] = a[(p, j)];
                a[(p, j)] = t;
            }
        }
        let pivot_inv = ONE / a[(k, k)];
        for i in k + 1..n {
            let f = a[(i, k)] * pivot_inv;
            a[(i, k)] = f;
            if f == ZERO {
                continue;
            }
            for j in k + 1..n {
                let u = a[(k, j)];
                a[(i, j)] -= f * u;
            }
        }
    }
    Ok(Lu { lu: a, perm, norm_1 })
}

impl Lu {
    pub fn dim(&self) -> usize {
        self.lu.rows()
    }

    pub fn solve_vec(&self, b: &[C64]) -> Vec<C64> {
        let n = self.dim();
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let s: C64 = row[..i].iter().zip(&x[..i]).map(|(a, b)| a * b).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let s: C64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(a, b)| a * b).sum();
            x[i] = (x[i] - s) / row[i];
        }
        x
    }

    /// Solve `M* x = b`.
    pub fn solve_adjoint_vec(&self, b: &[C64]) -> Vec<C64> {
        let n = self.dim();
        // M* = U* L* P, so solve U* w = b, L* y = w, x = P^T y.
        let mut w = b.to_vec();
        for i in 0..n {
            let mut s = w[i];
            for k in 0..i {
                s -= self.lu[(k, i)].conj() * w[k];
            }
            w[i] = s / self.lu[(i, i)].conj();
        }
        for i in (0..n).rev() {
            let mut s = w[i];
            for k in i + 1..n {
                s -= self.lu[(k, i)].conj() * w[k];
            }
            w[i] = s;
        }
        let mut x = vec![ZERO; n];
        for (i, &p) in self.perm.iter().enumerate() {
            x[p] = w[i];
        }
        x
    }

    /// Solve `M X = B` column by column.
    pub fn solve(&self, b: &ComplexMatrix) -> ComplexMatrix {
        let mut x = ComplexMatrix::zeros(b.rows(), b.cols());
        for j in 0..b.cols() {
            let col = self.solve_vec(&b.column(j));
            x.set_column(j, &col);
        }
        x
    }

    pub fn inverse(&self) -> ComplexMatrix {
        self.solve(&ComplexMatrix::identity(self.dim()))
    }

    /// 1-norm condition number from the explicit inverse.
    pub fn condition_1(&self) -> f64 {
        self.norm_1 * self.inverse().norm_1()
    }
}

/// Inverse with a conditioning guard; fails when `cond_1 > max_cond`.
pub fn inverse_checked(m: &ComplexMatrix, max_cond: f64) -> Result<ComplexMatrix> {
    let f = lu(m)?;
    let inv = f.inverse();
    let cond = f.norm_1 * inv.norm_1();
    if !cond.is_finite() || cond > max_cond {
        return Err(Error::NumericalFailure(format!("matrix is numerically singular (cond {cond:.3e})")));
    }
    Ok(inv)
}

/// `A B^{-1}` computed as `(B^{-*} A^*)^*`.
pub fn right_divide(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let f = lu(&b.adjoint())?;
    Ok(f.solve(&a.adjoint()).adjoint())
}
