use super::eigh::eigvalsh;
use super::matrix::{ComplexMatrix, HermitianMatrix, C64};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Singular values in nonincreasing order, `min(rows, cols)` of them.
///
/// Hermitian inputs go through the eigensolver; everything else through
/// one-sided Jacobi, which keeps small singular values accurate.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    if m.is_square() && is_exactly_hermitian(m) {
        let mut s: Vec<f64> = eigvalsh(&HermitianMatrix::symmetrized(m))?.into_iter().map(f64::abs).collect();
        s.sort_by(|a, b| b.total_cmp(a));
        return Ok(s);
    }
    // Orthogonalize the shorter side: columns of M, or columns of M*.
    let (cols, len) = if m.cols() <= m.rows() {
        ((0..m.cols()).map(|j| m.column(j)).collect::<Vec<_>>(), m.rows())
    } else {
        ((0..m.rows()).map(|i| m.row(i).iter().map(|z| z.conj()).collect()).collect(), m.cols())
    };
    let mut s = jacobi_column_norms(cols, len)?;
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

fn is_exactly_hermitian(m: &ComplexMatrix) -> bool {
    let n = m.rows();
    (0..n).all(|i| (i..n).all(|j| m[(i, j)] == m[(j, i)].conj()))
}

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn jacobi_column_norms(mut cols: Vec<Vec<C64>>, len: usize) -> Result<Vec<f64>> {
    let k = cols.len();
    let mut norms: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum()).collect();
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let (alpha, beta) = (norms[p], norms[q]);
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dot(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g <= 1e-15 * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                let (cp, cq) = (&mut left[p], &mut right[0]);
                for i in 0..len {
                    let a = cp[i];
                    let b = cq[i] * phase.conj();
                    cp[i] = a * c - b * s;
                    cq[i] = a * s + b * c;
                }
                norms[p] = cp.iter().map(|z| z.norm_sqr()).sum();
                norms[q] = cq.iter().map(|z| z.norm_sqr()).sum();
            }
        }
        if !rotated {
            return Ok(norms.into_iter().map(f64::sqrt).collect());
        }
    }
    Err(Error::NumericalFailure(format!("one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_values_sorted() {
        let s = singular_values(&ComplexMatrix::from_real_diag(&[3.0, -4.0])).unwrap();
        assert_eq!(s, vec![4.0, 3.0]);
    }

    #[test]
    fn zero_and_rank_one() {
        assert_eq!(singular_values(&ComplexMatrix::zeros(3, 2)).unwrap(), vec![0.0, 0.0]);
        let u = [C64::new(0.6, 0.0), C64::new(0.0, 0.8), C64::new(0.0, 0.0)];
        let v = [C64::new(0.0, 1.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)];
        let m = ComplexMatrix::from_fn(3, 3, |i, j| u[i] * v[j].conj());
        let s = singular_values(&m).unwrap();
        assert!((s[0] - 1.0).abs() < 1e-15);
        assert!(s[1].abs() < 1e-15 && s[2].abs() < 1e-15);
    }

    #[test]
    fn wide_matrix_uses_rows() {
        let m = ComplexMatrix::from_real_rows(&[[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]]);
        let s = singular_values(&m).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s[0] - 2.0).abs() < 1e-15 && (s[1] - 1.0).abs() < 1e-15);
    }
}
