//! Numerical range with respect to a weighted inner product, described by
//! its support function.

use crate::error::{Error, Result};
use crate::linalg::cholesky::cholesky;
use crate::linalg::matrix::{ComplexMatrix, HermitianMatrix, C64};
use crate::linalg::triangular::inverse_upper;
use crate::linalg::{eigvalsh, PositiveMatrix};
use std::f64::consts::PI;

/// Support samples `h(phi) = max { Re(e^{-i phi} w) : w in W(M) }` on a
/// uniform angle grid.
#[derive(Clone, Debug)]
pub struct NumericalRange {
    /// `R M R^{-1}` where `inner = R* R`; its standard numerical range is
    /// the weighted numerical range of `M`.
    transformed: ComplexMatrix,
    pub angles: Vec<f64>,
    pub support: Vec<f64>,
}

pub fn numerical_range_boundary(m: &ComplexMatrix, inner: &PositiveMatrix, angles: usize) -> Result<NumericalRange> {
    if angles < 8 {
        return Err(Error::BadParameter(format!("need at least 8 support directions, got {angles}")));
    }
    if !m.is_square() || m.rows() != inner.rows() {
        return Err(Error::DimensionMismatch("operator and inner product differ in size".into()));
    }
    let r = cholesky(inner.hermitian()).map_err(|_| Error::IllConditionedEmbedding { cond: inner.condition() })?;
    let transformed = &(&r * m) * &inverse_upper(&r);
    let grid: Vec<f64> = (0..angles).map(|k| 2.0 * PI * k as f64 / angles as f64).collect();
    let support = grid.iter().map(|&phi| support_of(&transformed, phi)).collect::<Result<Vec<_>>>()?;
    Ok(NumericalRange { transformed, angles: grid, support })
}

/// Standard numerical range (identity inner product).
pub fn numerical_range_standard(m: &ComplexMatrix, angles: usize) -> Result<NumericalRange> {
    let id = PositiveMatrix::new(HermitianMatrix::identity(m.rows()))?;
    numerical_range_boundary(m, &id, angles)
}

fn support_of(x: &ComplexMatrix, phi: f64) -> Result<f64> {
    let rot = x.scale(C64::from_polar(1.0, -phi));
    let ev = eigvalsh(&HermitianMatrix::symmetrized(&rot))?;
    Ok(ev[ev.len() - 1])
}

impl NumericalRange {
    /// Exact support value in an arbitrary direction.
    pub fn support_at(&self, phi: f64) -> Result<f64> {
        support_of(&self.transformed, phi)
    }

    /// Radius of a disk about `center` that provably contains the range:
    /// the sampled support lines bound a polygon inside the regular polygon
    /// of inradius `max_j h_j`, whose circumradius is `max_j h_j / cos(pi/m)`.
    pub fn enclosing_radius(&self, center: C64) -> f64 {
        let m = self.angles.len() as f64;
        let h = self
            .angles
            .iter()
            .zip(&self.support)
            .map(|(&phi, &s)| s - (C64::from_polar(1.0, -phi) * center).re)
            .fold(0.0, f64::max);
        h / (PI / m).cos()
    }

    /// Whether the range lies in the open disk `|z - center| < radius`.
    pub fn inside_disk(&self, center: C64, radius: f64) -> bool {
        self.enclosing_radius(center) < radius
    }

    /// Largest outward support across the two edges of the sector
    /// `{|arg z| <= theta}`; the range lies in the sector iff this is `<= 0`.
    pub fn sector_excess(&self, theta: f64) -> Result<f64> {
        let up = self.support_at(PI / 2.0 + theta)?;
        let down = self.support_at(-PI / 2.0 - theta)?;
        Ok(up.max(down))
    }

    /// Smallest real part over the range.
    pub fn min_real_part(&self) -> Result<f64> {
        Ok(-self.support_at(PI)?)
    }

    pub fn scale(&self) -> f64 {
        self.transformed.frobenius_norm()
    }
}
