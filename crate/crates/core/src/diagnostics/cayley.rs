use crate::error::Result;
use crate::form::FormPair;
use crate::linalg::lu::right_divide;
use crate::linalg::matrix::{ComplexMatrix, C64, I};

/// `C = (I - A)(I + A)^{-1}` for `A = Q (I + iT)^{-1}`, evaluated as
/// `(I - Q + iT)(I + Q + iT)^{-1}`.
pub fn cayley_transform(fp: &FormPair) -> Result<ComplexMatrix> {
    let it = fp.t().scale(I);
    let q = fp.q().hermitian().matrix();
    let num = (&it - q).shift_diag(C64::new(1.0, 0.0));
    let den = (&it + q).shift_diag(C64::new(1.0, 0.0));
    right_divide(&num, &den)
}

/// The same transform in the form `(T - i(I - Q))(T - i(I + Q))^{-1}`.
pub fn fan_form(fp: &FormPair) -> Result<ComplexMatrix> {
    let t = fp.t().matrix();
    let q = fp.q().hermitian().matrix();
    let f = q.scale_real(-1.0).shift_diag(C64::new(1.0, 0.0));
    let g = q.shift_diag(C64::new(1.0, 0.0));
    right_divide(&(t - &f.scale(I)), &(t - &g.scale(I)))
}

/// Scalar Cayley map `(1 - z) / (1 + z)`.
pub fn cayley_scalar(z: C64) -> C64 {
    (1.0 - z) / (1.0 + z)
}
