//! Resolvent profile of `A = Q (I + iT)^{-1}` over the closed left
//! half-plane.

use crate::error::{Error, Result};
use crate::form::FormPair;
use crate::linalg::lu::lu;
use crate::linalg::matrix::{ComplexMatrix, C64};
use crate::linalg::schur::complex_schur;
use crate::linalg::spectral_norm;
use crate::linalg::triangular::{norm_estimate, solve_shifted, solve_shifted_adjoint};
use std::f64::consts::PI;

/// Points `z = r e^{i alpha}` with `r` log-spaced and `alpha` in
/// `[pi/2, 3pi/2]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LeftHalfPlaneGrid {
    pub radii: Vec<f64>,
    pub angles: Vec<f64>,
}

impl LeftHalfPlaneGrid {
    /// `radii` values log-spaced over `[1e-3, 1e3] * scale`, `angles`
    /// equispaced rays including both ends of `[pi/2, 3pi/2]`.
    pub fn standard(scale: f64, radii: usize, angles: usize) -> Result<Self> {
        if angles < 16 || radii < 2 {
            return Err(Error::BadParameter(format!("grid needs >= 16 rays and >= 2 radii, got {angles} and {radii}")));
        }
        let (lo, hi) = ((1e-3 * scale).ln(), (1e3 * scale).ln());
        let radii = (0..radii).map(|k| (lo + (hi - lo) * k as f64 / (radii - 1) as f64).exp()).collect();
        let angles = (0..angles).map(|k| PI / 2.0 + PI * k as f64 / (angles - 1) as f64).collect();
        Ok(Self { radii, angles })
    }

    pub fn points(&self) -> impl Iterator<Item = C64> + '_ {
        self.radii.iter().flat_map(move |&r| self.angles.iter().map(move |&a| C64::from_polar(r, a)))
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SectorialProfile {
    /// `max ||z R(z, A)||_2` over the grid.
    pub sup_z_resolvent: f64,
    /// `max ||z (z + izT - Q)^{-1}||_2` over the grid.
    pub sup_inverse_bound: f64,
    /// Point where each supremum was attained.
    pub argmax_resolvent: C64,
    pub argmax_inverse: C64,
    pub grid_points: usize,
}

const POWER_ITERS: usize = 200;
const POWER_TOL: f64 = 1e-12;

/// Both grid suprema. Norms are power-iteration estimates (warm-started
/// along each ray), hence lower bounds of the exact grid values; for
/// `n <= EXACT_NORM_DIM` they are computed exactly.
pub fn sectoriality_profile(a_op: &ComplexMatrix, fp: &FormPair, grid: &LeftHalfPlaneGrid) -> Result<SectorialProfile> {
    let n = fp.dim();
    if a_op.rows() != n {
        return Err(Error::DimensionMismatch("A and the pair differ in size".into()));
    }
    let schur = complex_schur(a_op)?;
    let r = &schur.r;
    let l = fp.form_operator();
    let q = fp.q().hermitian().matrix().clone();
    let breach = |what: &str, z: C64| {
        Error::InvariantBreach(format!("{what} is numerically singular at z = {:.6e}{:+.6e}i in the left half-plane", z.re, z.im))
    };
    let exact = n <= EXACT_NORM_DIM;

    let mut best = (0.0, C64::new(0.0, 0.0));
    let mut best_inv = (0.0, C64::new(0.0, 0.0));
    let mut v1 = Vec::new();
    let mut v2 = Vec::new();
    for &alpha in &grid.angles {
        for &rad in &grid.radii {
            let z = C64::from_polar(rad, alpha);
            if schur.r.diag().iter().any(|&lam| (z - lam).norm() == 0.0) {
                return Err(breach("z - A", z));
            }
            let res_norm = if exact {
                let f = lu(&(-a_op).shift_diag(z)).map_err(|_| breach("z - A", z))?;
                spectral_norm(&f.inverse())?
            } else {
                norm_estimate(n, |v| solve_shifted(r, z, v), |v| solve_shifted_adjoint(r, z, v), &mut v1, POWER_ITERS, POWER_TOL)
            };
            let val = rad * res_norm;
            if !val.is_finite() {
                return Err(breach("z - A", z));
            }
            if val > best.0 {
                best = (val, z);
            }

            let pencil = &l.scale(z) - &q;
            let f = lu(&pencil).map_err(|_| breach("z(I + iT) - Q", z))?;
            let inv_norm = if exact {
                spectral_norm(&f.inverse())?
            } else {
                norm_estimate(n, |v| f.solve_vec(v), |v| f.solve_adjoint_vec(v), &mut v2, POWER_ITERS, POWER_TOL)
            };
            let val = rad * inv_norm;
            if !val.is_finite() {
                return Err(breach("z(I + iT) - Q", z));
            }
            if val > best_inv.0 {
                best_inv = (val, z);
            }
        }
    }
    Ok(SectorialProfile {
        sup_z_resolvent: best.0,
        sup_inverse_bound: best_inv.0,
        argmax_resolvent: best.1,
        argmax_inverse: best_inv.1,
        grid_points: grid.len(),
    })
}

/// Dimension up to which grid norms are computed exactly.
pub const EXACT_NORM_DIM: usize = 8;
