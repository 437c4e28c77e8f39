//! Hermitian eigensolver: Householder tridiagonalization, a diagonal phase
//! scaling to a real symmetric tridiagonal, then implicit QL with Wilkinson
//! shifts.

use super::matrix::{ComplexMatrix, HermitianMatrix, C64, ONE, ZERO};
use crate::error::{Error, Result};

/// Eigenpairs of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the eigenvectors.
    pub vectors: ComplexMatrix,
}

impl HermitianEig {
    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        *self.values.last().unwrap()
    }

    /// Largest absolute eigenvalue, i.e. the spectral norm.
    pub fn abs_max(&self) -> f64 {
        self.min().abs().max(self.max().abs())
    }

    /// `V f(diag) V*` for a real spectral function.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> HermitianMatrix {
        let d: Vec<C64> = self.values.iter().map(|&x| C64::new(f(x), 0.0)).collect();
        let vd = self.vectors.scale_columns(&d);
        HermitianMatrix::symmetrized(&(&vd * &self.vectors.adjoint()))
    }

    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }
}

pub fn hermitian_eig(m: &HermitianMatrix) -> Result<HermitianEig> {
    let n = m.dim();
    if n == 1 {
        return Ok(HermitianEig { values: vec![m[(0, 0)].re], vectors: ComplexMatrix::identity(1) });
    }
    let (diag, off, q) = tridiagonalize(m.matrix());

    // Phases p with conj(p[k+1]) e[k] p[k] = |e[k]|.
    let mut phase = vec![ONE; n];
    let mut off_abs = vec![0.0; n - 1];
    for k in 0..n - 1 {
        let a = off[k].norm();
        off_abs[k] = a;
        phase[k + 1] = if a > 0.0 { phase[k] * off[k] / a } else { phase[k] };
    }

    let mut d = diag;
    let mut zt = identity_real(n);
    tql2(&mut d, &off_abs, &mut zt)?;

    // Sort ascending.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values: Vec<f64> = order.iter().map(|&k| d[k]).collect();

    let qp = q.scale_columns(&phase);
    let mut vectors = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let qrow = qp.row(i);
        let out = vectors.row_mut(i);
        for (col, &k) in order.iter().enumerate() {
            let z = &zt[k * n..(k + 1) * n];
            out[col] = qrow.iter().zip(z).map(|(a, &b)| a * b).sum();
        }
    }
    Ok(HermitianEig { values, vectors })
}

/// Eigenvalues only (same algorithm; eigenvectors are still accumulated).
pub fn eigvalsh(m: &HermitianMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eig(m)?.values)
}

fn identity_real(n: usize) -> Vec<f64> {
    let mut z = vec![0.0; n * n];
    for i in 0..n {
        z[i * n + i] = 1.0;
    }
    z
}

/// Returns (real diagonal, complex subdiagonal, unitary Q) with `Q* M Q`
/// tridiagonal.
fn tridiagonalize(m: &ComplexMatrix) -> (Vec<f64>, Vec<C64>, ComplexMatrix) {
    let n = m.rows();
    let mut a = m.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let tail: f64 = (k + 2..n).map(|i| a[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let xnorm = (tail + x0.norm_sqr()).sqrt();
        let alpha = if x0.norm() > 0.0 { -(x0 / x0.norm()) * xnorm } else { C64::new(-xnorm, 0.0) };
        let mut v: Vec<C64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        let m_len = n - k - 1;
        // p = A22 v, gamma = v* p, w = p - gamma v; A22 -= 2 (v w* + w v*).
        let mut p = vec![ZERO; m_len];
        for (ii, pi) in p.iter_mut().enumerate() {
            let row = &a.row(k + 1 + ii)[k + 1..];
            *pi = row.iter().zip(&v).map(|(x, y)| x * y).sum();
        }
        let gamma: C64 = v.iter().zip(&p).map(|(x, y)| x.conj() * y).sum();
        let w: Vec<C64> = p.iter().zip(&v).map(|(pi, vi)| pi - gamma * vi).collect();
        for ii in 0..m_len {
            let (vi, wi) = (v[ii], w[ii]);
            let row = &mut a.row_mut(k + 1 + ii)[k + 1..];
            for jj in 0..m_len {
                row[jj] -= (vi * w[jj].conj() + wi * v[jj].conj()) * 2.0;
            }
        }
        a[(k + 1, k)] = alpha;
        a[(k, k + 1)] = alpha.conj();
        for i in k + 2..n {
            a[(i, k)] = ZERO;
            a[(k, i)] = ZERO;
        }
        // Q <- Q H.
        for i in 0..n {
            let row = &mut q.row_mut(i)[k + 1..];
            let s: C64 = row.iter().zip(&v).map(|(x, y)| x * y).sum();
            for (x, y) in row.iter_mut().zip(&v) {
                *x -= s * y.conj() * 2.0;
            }
        }
    }
    let diag = (0..n).map(|i| a[(i, i)].re).collect();
    let off = (0..n - 1).map(|i| a[(i + 1, i)]).collect();
    (diag, off, q)
}

/// Implicit QL on a real symmetric tridiagonal; `zt` holds eigenvectors as
/// rows on exit. Iteration cap is 30 n sweeps in total.
fn tql2(d: &mut [f64], off: &[f64], zt: &mut [f64]) -> Result<()> {
    let n = d.len();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);
    let eps = f64::EPSILON;
    let cap = 30 * n;
    let mut iters = 0usize;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            loop {
                iters += 1;
                if iters > cap {
                    return Err(Error::NumericalFailure(format!(
                        "Hermitian eigensolver did not converge within {cap} iterations"
                    )));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    let (lo, hi) = zt.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zi1 = &mut hi[..n];
                    for k in 0..n {
                        let h = zi1[k];
                        zi1[k] = s * zi[k] + c * h;
                        zi[k] = c * zi[k] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Hermitian positive-definite matrix with its eigendecomposition cached.
#[derive(Clone, Debug)]
pub struct PositiveMatrix {
    h: HermitianMatrix,
    eig: HermitianEig,
}

/// Relative positivity floor: `lambda_min > POSITIVITY_REL_TOL * ||M||_2`.
pub const POSITIVITY_REL_TOL: f64 = 1e-14;

impl PositiveMatrix {
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let eig = hermitian_eig(&h)?;
        let threshold = POSITIVITY_REL_TOL * eig.abs_max();
        if eig.min() <= threshold {
            return Err(Error::NotPositive { lambda_min: eig.min(), threshold });
        }
        Ok(Self { h, eig })
    }

    pub fn lambda_min(&self) -> f64 {
        self.eig.min()
    }

    pub fn lambda_max(&self) -> f64 {
        self.eig.max()
    }

    pub fn condition(&self) -> f64 {
        self.eig.max() / self.eig.min()
    }

    pub fn eig(&self) -> &HermitianEig {
        &self.eig
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.h
    }

    pub fn sqrt(&self) -> HermitianMatrix {
        self.eig.apply(f64::sqrt)
    }

    pub fn inv_sqrt(&self) -> HermitianMatrix {
        self.eig.apply(|x| 1.0 / x.sqrt())
    }

    pub fn inverse(&self) -> HermitianMatrix {
        self.eig.apply(|x| 1.0 / x)
    }
}

impl std::ops::Deref for PositiveMatrix {
    type Target = ComplexMatrix;
    fn deref(&self) -> &ComplexMatrix {
        self.h.matrix()
    }
}
