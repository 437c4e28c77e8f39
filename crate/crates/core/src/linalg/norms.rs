use super::eigh::eigvalsh;
use super::lu::lu;
use super::matrix::{ComplexMatrix, HermitianMatrix, C64};
use crate::error::{Error, Result};

/// Spectral norm `||M||_2` from the largest eigenvalue of `M* M`.
pub fn spectral_norm(m: &ComplexMatrix) -> Result<f64> {
    if m.max_abs() == 0.0 {
        return Ok(0.0);
    }
    let g = if m.rows() >= m.cols() { &m.adjoint() * m } else { m * &m.adjoint() };
    let ev = eigvalsh(&HermitianMatrix::symmetrized(&g))?;
    Ok(ev.last().copied().unwrap_or(0.0).max(0.0).sqrt())
}

/// Spectral norm of a Hermitian matrix (largest absolute eigenvalue).
pub fn hermitian_norm(m: &HermitianMatrix) -> Result<f64> {
    let ev = eigvalsh(m)?;
    Ok(ev[0].abs().max(ev[ev.len() - 1].abs()))
}

/// Power iteration on `M* M`, warm-started from `start`, which is
/// overwritten with the final right singular vector estimate. The returned
/// value never exceeds the true norm (Rayleigh quotient lower bound).
pub fn spectral_norm_estimate(m: &ComplexMatrix, start: &mut Vec<C64>, max_iter: usize, rel_tol: f64) -> f64 {
    let n = m.cols();
    if start.len() != n || start.iter().all(|z| z.norm() == 0.0) {
        *start = (0..n).map(|k| C64::new(1.0, 0.37 * k as f64 + 0.1)).collect();
    }
    normalize(start);
    let mut est = 0.0;
    for _ in 0..max_iter {
        let y = m.mul_vec(start);
        let ny = norm2(&y);
        if ny == 0.0 {
            return 0.0;
        }
        let z = m.adjoint_mul_vec(&y);
        let nz = norm2(&z);
        // ||M x|| with ||x|| = 1 is a rigorous lower bound.
        let prev = est;
        est = ny;
        *start = z.into_iter().map(|v| v / nz).collect();
        if (est - prev).abs() <= rel_tol * est {
            break;
        }
    }
    est
}

pub fn norm2(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn normalize(v: &mut [C64]) {
    let n = norm2(v);
    if n > 0.0 {
        for z in v.iter_mut() {
            *z /= n;
        }
    }
}

/// Resolvent `R(z, M) = (z I - M)^{-1}`.
///
/// Fails with `SingularResolvent` when `zI - M` has 1-norm condition above
/// `1e14`.
pub fn resolvent_apply(m: &ComplexMatrix, z: C64) -> Result<ComplexMatrix> {
    let shifted = (-m).shift_diag(z);
    let singular = |cond: f64| Error::SingularResolvent { re: z.re, im: z.im, cond };
    let f = lu(&shifted).map_err(|_| singular(f64::INFINITY))?;
    let inv = f.inverse();
    let cond = shifted.norm_1() * inv.norm_1();
    if !cond.is_finite() || cond > 1e14 {
        return Err(singular(cond));
    }
    Ok(inv)
}
