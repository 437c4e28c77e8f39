//! Complex Schur form `M = U R U*` by Householder reduction to Hessenberg
//! form followed by single-shift implicit QR with Givens rotations.

use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Schur {
    pub u: ComplexMatrix,
    pub r: ComplexMatrix,
}

impl Schur {
    pub fn eigenvalues(&self) -> Vec<C64> {
        self.r.diag()
    }

    /// Rebuild `U X U*` for a matrix given in the Schur basis.
    pub fn from_basis(&self, x: &ComplexMatrix) -> ComplexMatrix {
        &(&self.u * x) * &self.u.adjoint()
    }

    /// `U* X U`.
    pub fn to_basis(&self, x: &ComplexMatrix) -> ComplexMatrix {
        &(&self.u.adjoint() * x) * &self.u
    }
}

pub fn complex_schur(m: &ComplexMatrix) -> Result<Schur> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!("Schur form needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    let n = m.rows();
    let mut h = m.clone();
    let mut u = ComplexMatrix::identity(n);
    hessenberg(&mut h, &mut u);
    qr_iterate(&mut h, &mut u)?;
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = ZERO;
        }
    }
    Ok(Schur { u, r: h })
}

/// Eigenvalues of a general square matrix, in Schur order.
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<C64>> {
    Ok(complex_schur(m)?.eigenvalues())
}

fn hessenberg(h: &mut ComplexMatrix, u: &mut ComplexMatrix) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let tail: f64 = (k + 2..n).map(|i| h[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let xnorm = (tail + x0.norm_sqr()).sqrt();
        let alpha = if x0.norm() > 0.0 { -(x0 / x0.norm()) * xnorm } else { C64::new(-xnorm, 0.0) };
        let mut v: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // Left: rows k+1.. of H -= 2 v (v* H).
        let mut w = vec![ZERO; n];
        for (ii, vi) in v.iter().enumerate() {
            let row = h.row(k + 1 + ii);
            let vc = vi.conj();
            for j in k..n {
                w[j] += vc * row[j];
            }
        }
        for (ii, vi) in v.iter().enumerate() {
            let row = h.row_mut(k + 1 + ii);
            for j in k..n {
                row[j] -= *vi * w[j] * 2.0;
            }
        }
        // Right: columns k+1.. of H and U.
        for mat in [&mut *h, &mut *u] {
            for i in 0..n {
                let row = &mut mat.row_mut(i)[k + 1..];
                let s: C64 = row.iter().zip(&v).map(|(x, y)| x * y).sum();
                for (x, y) in row.iter_mut().zip(&v) {
                    *x -= s * y.conj() * 2.0;
                }
            }
        }
        h[(k + 1, k)] = alpha;
        for i in k + 2..n {
            h[(i, k)] = ZERO;
        }
    }
}

/// Rotation `G = [[c, s], [-conj(s), c]]` with `G (a, b)^T = (r, 0)^T`.
fn givens(a: C64, b: C64) -> (f64, C64) {
    if b == ZERO {
        return (1.0, ZERO);
    }
    if a == ZERO {
        return (0.0, b.conj() / b.norm());
    }
    let na = a.norm();
    let norm = na.hypot(b.norm());
    (na / norm, (a / na) * b.conj() / norm)
}

/// `H <- G H G*` on rows/columns (k, k+1), accumulating `U <- U G*`.
fn rotate(h: &mut ComplexMatrix, u: &mut ComplexMatrix, k: usize, c: f64, s: C64, row_from: usize, col_to: usize) {
    let n = h.rows();
    let sc = s.conj();
    {
        let (top, bottom) = h.as_mut_slice().split_at_mut((k + 1) * n);
        let ri = &mut top[k * n..];
        let rj = &mut bottom[..n];
        for j in row_from..n {
            let (a, b) = (ri[j], rj[j]);
            ri[j] = a * c + s * b;
            rj[j] = -sc * a + b * c;
        }
    }
    for i in 0..=col_to {
        let (a, b) = (h[(i, k)], h[(i, k + 1)]);
        h[(i, k)] = a * c + sc * b;
        h[(i, k + 1)] = -s * a + b * c;
    }
    for i in 0..n {
        let (a, b) = (u[(i, k)], u[(i, k + 1)]);
        u[(i, k)] = a * c + sc * b;
        u[(i, k + 1)] = -s * a + b * c;
    }
}

fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let (l1, l2) = (mid + disc, mid - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn qr_iterate(h: &mut ComplexMatrix, u: &mut ComplexMatrix) -> Result<()> {
    let n = h.rows();
    if n < 2 {
        return Ok(());
    }
    let hnorm = h.frobenius_norm();
    let cap = 30 * n.max(10);
    let mut total = 0usize;
    let mut since_deflation = 0usize;
    let mut hi = n - 1;
    while hi > 0 {
        // Locate the start of the unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut local = h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm();
            if local == 0.0 {
                local = hnorm;
            }
            if sub <= 1e-14 * local || sub < f64::MIN_POSITIVE {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total += 1;
        since_deflation += 1;
        if total > cap {
            return Err(Error::NumericalFailure(format!("complex QR iteration did not converge within {cap} steps")));
        }
        let shift = if since_deflation % 10 == 0 {
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };
        let (c, s) = givens(h[(lo, lo)] - shift, h[(lo + 1, lo)]);
        rotate(h, u, lo, c, s, lo, (lo + 2).min(hi));
        for k in lo + 1..hi {
            let (c, s) = givens(h[(k, k - 1)], h[(k + 1, k - 1)]);
            rotate(h, u, k, c, s, k - 1, (k + 2).min(hi));
            h[(k + 1, k - 1)] = ZERO;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random::{random_complex, seeded_rng};

    fn residual(m: &ComplexMatrix, s: &Schur) -> f64 {
        (m - &s.from_basis(&s.r)).frobenius_norm()
    }

    #[test]
    fn triangular_input_is_left_alone() {
        let m = ComplexMatrix::from_rows(&[
            [C64::new(1.0, 0.0), C64::new(2.0, 1.0), C64::new(0.0, 3.0)],
            [ZERO, C64::new(-2.0, 0.5), C64::new(1.0, 0.0)],
            [ZERO, ZERO, C64::new(0.0, 4.0)],
        ]);
        let s = complex_schur(&m).unwrap();
        assert_eq!(s.r, m);
        assert_eq!(s.u, ComplexMatrix::identity(3));
    }

    #[test]
    fn rotation_generator_has_spectrum_plus_minus_i() {
        let m = ComplexMatrix::from_real_rows(&[[0.0, 1.0], [-1.0, 0.0]]);
        let mut ev = eigenvalues(&m).unwrap();
        ev.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((ev[0] - C64::new(0.0, -1.0)).norm() < 1e-14);
        assert!((ev[1] - C64::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn random_reconstruction_seed_3() {
        let mut rng = seeded_rng(3);
        let m = random_complex(&mut rng, 6, 6);
        let s = complex_schur(&m).unwrap();
        assert!(residual(&m, &s) <= 1e-11 * 6.0 * m.frobenius_norm());
        let o = (&(&s.u.adjoint() * &s.u) - &ComplexMatrix::identity(6)).frobenius_norm();
        assert!(o < 1e-12);
    }

    #[test]
    fn larger_and_structured_inputs() {
        let mut rng = seeded_rng(4);
        for n in [2usize, 9, 40, 120] {
            let m = random_complex(&mut rng, n, n);
            let s = complex_schur(&m).unwrap();
            assert!(residual(&m, &s) <= 1e-11 * n as f64 * m.frobenius_norm(), "n={n}");
        }
        // Jordan block and a cyclic permutation: defective and unitary cases.
        let j = ComplexMatrix::from_fn(5, 5, |i, k| if k == i + 1 || i == k { C64::new(1.0, 0.0) } else { ZERO });
        assert!(residual(&j, &complex_schur(&j).unwrap()) < 1e-12);
        let p = ComplexMatrix::from_fn(7, 7, |i, k| if (i + 1) % 7 == k { C64::new(1.0, 0.0) } else { ZERO });
        let s = complex_schur(&p).unwrap();
        assert!(residual(&p, &s) < 1e-11 * 7.0 * p.frobenius_norm());
        for l in s.eigenvalues() {
            assert!((l.norm() - 1.0).abs() < 1e-10);
        }
    }
}
