//! Ritt-type constants of a transform `C`: resolvent growth near the unit
//! circle, power bound, and the discrete criterion `n ||C^n - C^{n+1}||`.

use crate::error::{Error, Result};
use crate::linalg::matrix::{ComplexMatrix, C64};
use crate::linalg::schur::complex_schur;
use crate::linalg::triangular::{norm_estimate, solve_shifted, solve_shifted_adjoint, upper_adjoint_mul_vec, upper_mul_vec};
use std::f64::consts::PI;

/// Points `z = (1 + 10^s) e^{i phi}` outside the closed unit disk.
#[derive(Clone, Debug, PartialEq)]
pub struct ExteriorGrid {
    pub radii: Vec<f64>,
    pub args: Vec<f64>,
}

impl ExteriorGrid {
    /// `radial` exponents `s` equispaced in `[-6, 3]`, `args` equispaced
    /// arguments starting at 0 (so the ray through 1 is included).
    pub fn standard(radial: usize, args: usize) -> Result<Self> {
        if args < 64 || radial < 2 {
            return Err(Error::BadParameter(format!("exterior grid needs >= 64 arguments and >= 2 radii, got {args}, {radial}")));
        }
        let radii = (0..radial).map(|k| 1.0 + 10f64.powf(-6.0 + 9.0 * k as f64 / (radial - 1) as f64)).collect();
        let args = (0..args).map(|k| 2.0 * PI * k as f64 / args as f64).collect();
        Ok(Self { radii, args })
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.args.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Default for ExteriorGrid {
    fn default() -> Self {
        Self::standard(28, 64).expect("default grid is valid")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RittConstants {
    /// `max ||(z - 1) R(z, C)||_2` over the grid.
    pub ritt_const: f64,
    /// `max_{0 <= n <= N} ||C^n||_2`, with `||C^0|| = 1`.
    pub power_bound: f64,
    /// `max_{1 <= n <= N} n ||C^n - C^{n+1}||_2`.
    pub ritt_discrete: f64,
    /// Smallest `n` attaining `ritt_discrete` (0 when it is zero).
    pub ritt_discrete_argmax: usize,
    /// Last power actually formed; later powers were bounded a priori.
    pub powers_evaluated: usize,
    pub spectral_radius: f64,
}

const POWER_ITERS: usize = 300;
const POWER_TOL: f64 = 1e-13;

pub fn ritt_constants(c: &ComplexMatrix, power_cap: usize, grid: &ExteriorGrid) -> Result<RittConstants> {
    if power_cap < 1 {
        return Err(Error::BadParameter("power cap must be positive".into()));
    }
    let n = c.rows();
    let schur = complex_schur(c)?;
    let r = &schur.r;
    let spectral_radius = r.diag().iter().map(|z| z.norm()).fold(0.0, f64::max);
    if spectral_radius > 1.0 + 1e-9 {
        return Err(Error::InvariantBreach(format!(
            "spectrum of the transform leaves the closed unit disk (spectral radius {spectral_radius:.12})"
        )));
    }

    let mut ritt_const: f64 = 0.0;
    let mut v = Vec::new();
    for &phi in &grid.args {
        for &rad in &grid.radii {
            let z = C64::from_polar(rad, phi);
            let est = norm_estimate(n, |x| solve_shifted(r, z, x), |x| solve_shifted_adjoint(r, z, x), &mut v, POWER_ITERS, POWER_TOL);
            ritt_const = ritt_const.max((z - 1.0).norm() * est);
        }
    }

    let (power_bound, ritt_discrete, argmax, evaluated) = power_scan(r, power_cap);
    Ok(RittConstants {
        ritt_const,
        power_bound,
        ritt_discrete,
        ritt_discrete_argmax: argmax,
        powers_evaluated: evaluated,
        spectral_radius,
    })
}

fn triangular_norm(x: &ComplexMatrix, v: &mut Vec<C64>) -> f64 {
    norm_estimate(x.rows(), |a| upper_mul_vec(x, a), |a| upper_adjoint_mul_vec(x, a), v, POWER_ITERS, POWER_TOL)
}

/// Scan `C^k` and `C^k - C^{k+1}` in the Schur basis.
///
/// Stops early at step `m` once the Frobenius norms give
/// `rho = ||C^m||_F < 1` and the a-priori bounds
/// `||C^k|| <= rho^q B` and `k ||C^k - C^{k+1}|| <= (q + 1) m rho^q D`
/// (for `k = q m + r`, `B`, `D` the Frobenius maxima over `k < m`) can no
/// longer beat the maxima found so far.
fn power_scan(r: &ComplexMatrix, cap: usize) -> (f64, f64, usize, usize) {
    let n = r.rows();
    let mut power_bound: f64 = 1.0;
    let mut ritt: f64 = 0.0;
    let mut argmax = 0usize;
    let mut p = r.clone();
    let mut v_pow = Vec::new();
    let mut v_diff = Vec::new();
    let mut frob_pow_max: f64 = (n as f64).sqrt();
    let mut frob_diff_max: f64 = (&ComplexMatrix::identity(n) - r).frobenius_norm();
    for k in 1..=cap {
        let next = p.upper_triangular_matmul(r);
        let diff = &p - &next;
        let np = triangular_norm(&p, &mut v_pow);
        let nd = triangular_norm(&diff, &mut v_diff);
        power_bound = power_bound.max(np);
        if k as f64 * nd > ritt {
            ritt = k as f64 * nd;
            argmax = k;
        }
        let rho = p.frobenius_norm();
        if rho < 1.0 && k < cap {
            let q_max = cap / k;
            let tail_ritt = (1..=q_max).map(|q| (q + 1) as f64 * k as f64 * rho.powi(q as i32) * frob_diff_max).fold(0.0, f64::max);
            if (tail_ritt < ritt || tail_ritt == 0.0) && rho * frob_pow_max <= power_bound {
                return (power_bound, ritt, argmax, k);
            }
        }
        frob_pow_max = frob_pow_max.max(rho);
        frob_diff_max = frob_diff_max.max(diff.frobenius_norm());
        p = next;
    }
    (power_bound, ritt, argmax, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_transform() {
        let c = ComplexMatrix::zeros(2, 2);
        let grid = ExteriorGrid::default();
        let k = ritt_constants(&c, 1000, &grid).unwrap();
        assert!((k.ritt_const - 2.0).abs() < 1e-5);
        assert_eq!(k.power_bound, 1.0);
        assert_eq!(k.ritt_discrete, 0.0);
    }

    #[test]
    fn identity_transform() {
        let c = ComplexMatrix::identity(1);
        let k = ritt_constants(&c, 1000, &ExteriorGrid::default()).unwrap();
        assert!((k.ritt_const - 1.0).abs() < 1e-12);
        assert_eq!(k.ritt_discrete, 0.0);
        assert!((k.power_bound - 1.0).abs() < 1e-15);
    }

    #[test]
    fn escaping_spectrum_is_a_breach() {
        let c = ComplexMatrix::from_real_diag(&[1.1]);
        assert!(matches!(ritt_constants(&c, 100, &ExteriorGrid::default()), Err(Error::InvariantBreach(_))));
    }
}
