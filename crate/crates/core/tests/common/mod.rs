//! Independent reference computations used as oracles by the integration
//! tests. Nothing here calls the decompositions under test.
#![allow(dead_code)]

use katolab::linalg::matrix::{ComplexMatrix, C64};

/// Characteristic polynomial coefficients `c_0..c_n` of `det(zI - M)`
/// (monic, `c_n = 1`) by Faddeev–LeVerrier.
pub fn charpoly(m: &ComplexMatrix) -> Vec<C64> {
    let n = m.rows();
    let mut c = vec![C64::new(0.0, 0.0); n + 1];
    c[n] = C64::new(1.0, 0.0);
    let mut mk = ComplexMatrix::zeros(n, n);
    for k in 1..=n {
        let prev = mk.shift_diag(c[n - k + 1]);
        mk = m * &prev;
        c[n - k] = -mk.trace() / k as f64;
    }
    c
}

/// Roots of a monic polynomial by Durand–Kerner iteration, polished by
/// Newton steps.
pub fn poly_roots(c: &[C64]) -> Vec<C64> {
    let n = c.len() - 1;
    let eval = |z: C64| c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let deriv = |z: C64| {
        (1..=n).rev().fold(C64::new(0.0, 0.0), |acc, k| acc * z + c[k] * k as f64)
    };
    let radius = 1.0 + c[..n].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let mut z: Vec<C64> = (0..n).map(|k| C64::from_polar(radius * 0.9, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64)).collect();
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = C64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 * radius {
            break;
        }
    }
    for zi in &mut z {
        for _ in 0..3 {
            let d = deriv(*zi);
            if d.norm() > 0.0 {
                *zi -= eval(*zi) / d;
            }
        }
    }
    z
}

pub fn eigenvalues_oracle(m: &ComplexMatrix) -> Vec<C64> {
    poly_roots(&charpoly(m))
}

/// Gaussian elimination with partial pivoting.
pub fn solve(a: &ComplexMatrix, b: &[C64]) -> Vec<C64> {
    let n = a.rows();
    let mut m: Vec<Vec<C64>> = (0..n).map(|i| (0..n).map(|j| a[(i, j)]).chain([b[i]]).collect()).collect();
    for k in 0..n {
        let p = (k..n).max_by(|&x, &y| m[x][k].norm().total_cmp(&m[y][k].norm())).unwrap();
        m.swap(k, p);
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..=n {
                let v = m[k][j];
                m[i][j] -= f * v;
            }
        }
    }
    let mut x = vec![C64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let s: C64 = (i + 1..n).map(|j| m[i][j] * x[j]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    x
}

pub fn inverse(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        let e: Vec<C64> = (0..n).map(|i| if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }).collect();
        out.set_column(j, &solve(a, &e));
    }
    out
}

/// Eigenvector for an eigenvalue estimate by inverse iteration.
pub fn eigenvector(m: &ComplexMatrix, lambda: C64) -> Vec<C64> {
    let n = m.rows();
    let shift = lambda + C64::new(1e-10, 1e-10) * (1.0 + lambda.norm());
    let a = m.shift_diag(-shift);
    let mut v: Vec<C64> = (0..n).map(|k| C64::new(1.0, 0.1 * k as f64)).collect();
    for _ in 0..4 {
        v = solve(&a, &v);
        let nv = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= nv);
    }
    v
}

/// Principal square root through an eigendecomposition `V diag(sqrt l) V^{-1}`.
pub fn sqrtm_eig(m: &ComplexMatrix) -> (ComplexMatrix, f64) {
    let n = m.rows();
    let l = eigenvalues_oracle(m);
    let mut v = ComplexMatrix::zeros(n, n);
    for (k, &lk) in l.iter().enumerate() {
        v.set_column(k, &eigenvector(m, lk));
    }
    let vi = inverse(&v);
    let cond = v.frobenius_norm() * vi.frobenius_norm();
    let d: Vec<C64> = l.iter().map(|z| z.sqrt()).collect();
    (&v.scale_columns(&d) * &vi, cond)
}

/// Eigenvalues of a Hermitian matrix as the (real) roots of its
/// characteristic polynomial, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = eigenvalues_oracle(h).iter().map(|z| z.re).collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `sqrt(max_k |1 + i t_k| / min_k |1 + i t_k|)`.
pub fn commuting_kappa(t: &[f64]) -> f64 {
    let m: Vec<f64> = t.iter().map(|x| (1.0 + x * x).sqrt()).collect();
    let hi = m.iter().cloned().fold(0.0, f64::max);
    let lo = m.iter().cloned().fold(f64::INFINITY, f64::min);
    (hi / lo).sqrt()
}

/// Matching of two multisets of complex numbers: greedy nearest pairing,
/// returns the largest distance.
pub fn multiset_distance(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_by(|&i, &j| a[i].re.total_cmp(&a[j].re));
    for i in order {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, z)| (j, (a[i] - z).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

/// Random pair with `||T|| = beta` and `cond(Q) = cond`.
pub fn random_pair(seed: u64, n: usize, beta: f64, cond: f64) -> katolab::form::FormPair {
    use katolab::linalg::random::{random_hermitian, random_positive, seeded_rng};
    let mut rng = seeded_rng(seed);
    let t = random_hermitian(&mut rng, n);
    let norm = katolab::linalg::spectral_norm(t.matrix()).unwrap();
    let t = t.scale_real(if norm > 0.0 { beta / norm } else { 0.0 });
    let q = random_positive(&mut rng, n, cond);
    katolab::form::make_form_pair(&t, q.matrix(), "random").unwrap()
}

/// `kappa` from `B = sqrtm(L_H)` by eigendecomposition and the extreme
/// eigenvalues of `B* Q B` from characteristic-polynomial roots.
pub fn oracle_kappa(fp: &katolab::form::FormPair) -> f64 {
    let q = fp.q().hermitian().matrix().clone();
    let l = &inverse(&q) * &fp.form_operator();
    let (b, _) = sqrtm_eig(&l);
    let m = &(&b.adjoint() * &q) * &b;
    let ev = hermitian_eigenvalues(&m);
    (ev[ev.len() - 1] / ev[0]).sqrt()
}
