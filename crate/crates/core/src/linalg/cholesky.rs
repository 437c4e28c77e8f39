use super::matrix::{ComplexMatrix, HermitianMatrix, C64};
#[cfg(test)]
use super::triangular::inverse_upper;
use crate::error::{Error, Result};

/// Upper-triangular `R` with `M = R* R`.
pub fn cholesky(m: &HermitianMatrix) -> Result<ComplexMatrix> {
    let n = m.dim();
    let mut r = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let mut d = m[(j, j)].re;
        for k in 0..j {
            d -= r[(k, j)].norm_sqr();
        }
        if !(d > 0.0) {
            return Err(Error::NotPositive { lambda_min: d, threshold: 0.0 });
        }
        let rjj = d.sqrt();
        r[(j, j)] = C64::new(rjj, 0.0);
        for i in j + 1..n {
            let mut s = m[(j, i)];
            for k in 0..j {
                s -= r[(k, j)].conj() * r[(k, i)];
            }
            r[(j, i)] = s / rjj;
        }
    }
    Ok(r)
}
