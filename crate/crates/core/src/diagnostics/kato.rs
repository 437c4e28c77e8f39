//! Equivalence constants between `||L_H^{1/2} u||_H` and `||u||_V`.

use crate::error::Result;
use crate::form::{assemble_bundle, FormPair};
use crate::linalg::matrix::{ComplexMatrix, HermitianMatrix, C64};
use crate::linalg::{eigvalsh, sqrtm_principal};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KatoConstants {
    /// Smallest value of `||L_H^{1/2} u||_H^2 / ||u||_V^2`.
    pub c_minus: f64,
    /// Largest value of the same quotient.
    pub c_plus: f64,
    /// `sqrt(c_plus / c_minus)`.
    pub kappa: f64,
}

impl KatoConstants {
    fn from_extremes(c_minus: f64, c_plus: f64) -> Self {
        Self { c_minus, c_plus, kappa: (c_plus / c_minus).sqrt() }
    }
}

/// Extreme eigenvalues of `M = B* Q B` with `B` the principal square root of
/// `L_H = Q^{-1}(I + iT)`.
///
/// Works in the eigenbasis of `Q = U diag(q) U*`: there
/// `L_H = U D^{-1} K D U*` with `D = diag(q)^{1/2}` and
/// `K = D^{-1} (I + iT') D^{-1}`, so `B = U D^{-1} K^{1/2} D U*` and
/// `M = U N* N U*` with `N = K^{1/2} D`. The matrix `K` stays well scaled
/// when `Q` is badly conditioned, which the product `Q^{-1}(I + iT)` is not.
pub fn kato_constants(fp: &FormPair) -> Result<KatoConstants> {
    let m = kato_gram(fp)?;
    let ev = eigvalsh(&m)?;
    Ok(KatoConstants::from_extremes(ev[0], ev[ev.len() - 1]))
}

/// The Hermitian matrix `N* N` (unitarily similar to `B* Q B`).
pub fn kato_gram(fp: &FormPair) -> Result<HermitianMatrix> {
    let eig = fp.q().eig();
    let u = &eig.vectors;
    let t_rot = &(&u.adjoint() * fp.t().matrix()) * u;
    let d_inv: Vec<C64> = eig.values.iter().map(|&q| C64::new(1.0 / q.sqrt(), 0.0)).collect();
    let d: Vec<C64> = eig.values.iter().map(|&q| C64::new(q.sqrt(), 0.0)).collect();
    let l = t_rot.scale(C64::new(0.0, 1.0)).shift_diag(C64::new(1.0, 0.0));
    let k = l.scale_rows(&d_inv).scale_columns(&d_inv);
    let n = sqrtm_principal(&k)?.scale_columns(&d);
    Ok(HermitianMatrix::symmetrized(&(&n.adjoint() * &n)))
}

/// The same constants computed literally from `B = sqrtm(L_H)` and
/// `M = B* Q B`; accurate only for moderately conditioned `Q`.
pub fn kato_constants_direct(fp: &FormPair) -> Result<KatoConstants> {
    let bundle = assemble_bundle(fp)?;
    let b = sqrtm_principal(&bundle.l_h)?;
    let m = &(&b.adjoint() * fp.q().hermitian().matrix()) * &b;
    let ev = eigvalsh(&HermitianMatrix::symmetrized(&m))?;
    Ok(KatoConstants::from_extremes(ev[0], ev[ev.len() - 1]))
}

/// Square root of `L_H` itself.
pub fn sqrt_l_h(fp: &FormPair) -> Result<ComplexMatrix> {
    sqrtm_principal(&assemble_bundle(fp)?.l_h)
}
