use super::lu::lu;
use super::matrix::ComplexMatrix;
use crate::error::Result;

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

/// Matrix exponential by scaling and squaring with the degree-13 Padé
/// approximant.
pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.rows();
    let norm = a.norm_1();
    let s = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = a.scale_real(0.5f64.powi(s));
    let b = &PADE13;
    let id = ComplexMatrix::identity(n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;
    let lin = |c6: f64, c4: f64, c2: f64, c0: f64| -> ComplexMatrix {
        &(&(&a6.scale_real(c6) + &a4.scale_real(c4)) + &a2.scale_real(c2)) + &id.scale_real(c0)
    };
    let u_inner = &a6 * &(&(&a6.scale_real(b[13]) + &a4.scale_real(b[11])) + &a2.scale_real(b[9]));
    let u = &a * &(&u_inner + &lin(b[7], b[5], b[3], b[1]));
    let v_inner = &a6 * &(&(&a6.scale_real(b[12]) + &a4.scale_real(b[10])) + &a2.scale_real(b[8]));
    let v = &v_inner + &lin(b[6], b[4], b[2], b[0]);
    let mut r = lu(&(&v - &u))?.solve(&(&v + &u));
    for _ in 0..s {
        r = &r * &r;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::C64;

    #[test]
    fn diagonal_and_nilpotent() {
        let d = ComplexMatrix::from_diag(&[C64::new(1.0, 0.0), C64::new(-20.0, 3.0)]);
        let e = expm(&d).unwrap();
        assert!((e[(0, 0)] - C64::new(1.0, 0.0).exp()).norm() < 1e-14);
        let want = C64::new(-20.0, 3.0).exp();
        assert!((e[(1, 1)] - want).norm() <= 1e-13 * want.norm());
        let n = ComplexMatrix::from_real_rows(&[[0.0, 2.0], [0.0, 0.0]]);
        let e = expm(&n).unwrap();
        assert!((e[(0, 1)].re - 2.0).abs() < 1e-15 && (e[(0, 0)].re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rotation_generator() {
        let t = 7.5;
        let m = ComplexMatrix::from_real_rows(&[[0.0, -t], [t, 0.0]]);
        let e = expm(&m).unwrap();
        assert!((e[(0, 0)].re - t.cos()).abs() < 1e-13);
        assert!((e[(1, 0)].re - t.sin()).abs() < 1e-13);
    }
}
