//! Replay of a certificate against its operator, independent of the solver
//! that produced it.

use super::contraction::check_contraction;
use super::reweight::{form_scale, reweight_margin};
use super::{Certificate, VALID_REL_TOL};
use crate::diagnostics::cayley::cayley_transform;
use crate::error::{Error, Result};
use crate::form::FormPair;
use crate::linalg::hermitian_eig;
use crate::linalg::matrix::ComplexMatrix;

#[derive(Clone, Copy, Debug)]
pub enum ValidationTarget<'a> {
    /// A pair; contraction kinds are checked against its Cayley transform.
    Form(&'a FormPair),
    /// A bare matrix, only meaningful for contraction kinds.
    Cayley(&'a ComplexMatrix),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Validation {
    pub margin: f64,
    pub scale: f64,
    pub witness_positive: bool,
    pub transformed_norm: Option<f64>,
    pub valid: bool,
}

pub fn validate_certificate(cert: &Certificate, target: ValidationTarget) -> Result<Validation> {
    if cert.kind.is_form_kind() {
        let ValidationTarget::Form(fp) = target else {
            return Err(Error::KindMismatch(format!("{} certificates need a form pair", cert.kind)));
        };
        if fp.dim() != cert.witness.rows() {
            return Err(Error::DimensionMismatch(format!("witness is {}x{}, pair has dimension {}", cert.witness.rows(), cert.witness.rows(), fp.dim())));
        }
        let witness_positive = hermitian_eig(&cert.witness)?.min() > 0.0;
        let (margin, _) = reweight_margin(fp, &cert.witness)?;
        let scale = form_scale(fp, &cert.witness)?;
        let valid = witness_positive && margin >= -VALID_REL_TOL * scale;
        return Ok(Validation { margin, scale, witness_positive, transformed_norm: None, valid });
    }
    let owned;
    let c = match target {
        ValidationTarget::Cayley(c) => c,
        ValidationTarget::Form(fp) => {
            owned = cayley_transform(fp)?;
            &owned
        }
    };
    if c.rows() != cert.witness.rows() || !c.is_square() {
        return Err(Error::DimensionMismatch(format!("witness is {}x{}, matrix is {}x{}", cert.witness.rows(), cert.witness.rows(), c.rows(), c.cols())));
    }
    let chk = check_contraction(c, &cert.witness)?;
    Ok(Validation {
        margin: chk.margin,
        scale: chk.scale,
        witness_positive: chk.positive,
        transformed_norm: chk.transformed_norm,
        valid: chk.valid(),
    })
}
