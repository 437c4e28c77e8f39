use katolab::linalg::matrix::{ComplexMatrix, C64};
use katolab::linalg::random::{random_complex, random_unitary, seeded_rng};
use katolab::linalg::singular_values;
use katolab::spectral::{
    divergence_diagnostic, prescribe_decay, schatten_norm, triangularity_functional, DecayKind, DecaySequence, GrowthClass,
};
use proptest::prelude::*;

fn direct_partial_sum(m: &ComplexMatrix) -> f64 {
    singular_values(m).unwrap().iter().enumerate().map(|(k, s)| s / (k as f64 + 2.0)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn functionals_are_unitarily_invariant(seed in 0u64..10_000, n in 2usize..12) {
        let mut rng = seeded_rng(seed);
        let m = random_complex(&mut rng, n, n);
        let u = random_unitary(&mut rng, n);
        let v = random_unitary(&mut rng, n);
        let x = &(&u * &m) * &v.adjoint();
        let a = triangularity_functional(&m).unwrap().partial_sum;
        let b = triangularity_functional(&x).unwrap().partial_sum;
        prop_assert!((a - b).abs() <= 1e-11 * a);
        for p in [1.0, 2.0, 3.5, f64::INFINITY] {
            let a = schatten_norm(&m, p).unwrap();
            let b = schatten_norm(&x, p).unwrap();
            prop_assert!((a - b).abs() <= 1e-11 * a);
        }
    }

    #[test]
    fn zero_padding_changes_nothing(seed in 0u64..10_000, n in 1usize..8, extra in 1usize..5) {
        let m = random_complex(&mut seeded_rng(seed), n, n);
        let p = m.zero_padded(n + extra, n + extra);
        let a = triangularity_functional(&m).unwrap();
        let b = triangularity_functional(&p).unwrap();
        prop_assert!((a.partial_sum - b.partial_sum).abs() <= 1e-12 * a.partial_sum);
        prop_assert!((schatten_norm(&m, 2.0).unwrap() - schatten_norm(&p, 2.0).unwrap()).abs() <= 1e-12 * schatten_norm(&m, 2.0).unwrap());
    }

    #[test]
    fn termwise_bound_and_direct_sum(seed in 0u64..10_000, n in 1usize..10) {
        let m = random_complex(&mut seeded_rng(seed), n, n);
        let t = triangularity_functional(&m).unwrap();
        let s = singular_values(&m).unwrap();
        for (k, (term, sk)) in t.per_term.iter().zip(&s).enumerate() {
            prop_assert!(*term <= s[0] / (k as f64 + 2.0) + 1e-15);
            prop_assert!((term - sk / (k as f64 + 2.0)).abs() <= 1e-14 * s[0]);
        }
        prop_assert!((t.partial_sum - direct_partial_sum(&m)).abs() <= 1e-12 * t.partial_sum.max(1e-300));
    }

    #[test]
    fn schatten_norms_are_monotone_in_p(seed in 0u64..10_000) {
        let m = random_complex(&mut seeded_rng(seed), 6, 6);
        let ps = [1.0, 1.5, 2.0, 4.0, f64::INFINITY];
        let v: Vec<f64> = ps.iter().map(|&p| schatten_norm(&m, p).unwrap()).collect();
        prop_assert!(v.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
    }
}

#[test]
fn diagonal_operator_sums() {
    let d: Vec<C64> = [4.0, 2.0, 1.0].iter().map(|&x| C64::new(x, 0.0)).collect();
    let m = ComplexMatrix::from_diag(&d);
    let t = triangularity_functional(&m).unwrap();
    assert!((t.partial_sum - (4.0 / 2.0 + 2.0 / 3.0 + 1.0 / 4.0)).abs() < 1e-15);
    assert!((schatten_norm(&m, 1.0).unwrap() - 7.0).abs() < 1e-14);
    assert!((schatten_norm(&m, 2.0).unwrap() - 21f64.sqrt()).abs() < 1e-14);
    assert!(schatten_norm(&m, 0.5).is_err());
}

#[test]
fn decay_classes() {
    let n = 4096;
    let power = prescribe_decay(DecayKind::Power(2.0), n).unwrap();
    assert_eq!(divergence_diagnostic(&power, n).unwrap().class, GrowthClass::ConvergentLike);
    let slow = prescribe_decay(DecayKind::ReciprocalLog, n).unwrap();
    assert_eq!(divergence_diagnostic(&slow, n).unwrap().class, GrowthClass::DivergentLike);
    let geo = prescribe_decay(DecayKind::Geometric(0.5), 256).unwrap();
    let r = divergence_diagnostic(&geo, 256).unwrap();
    assert_eq!(r.class, GrowthClass::ConvergentLike);
    // sum_{k>=1} 2^{-(k-1)} / (k + 1) = 2 (2 ln 2 - 1), summed directly.
    let direct: f64 = (1..=256).map(|k| 0.5f64.powi(k - 1) / (k as f64 + 1.0)).sum();
    assert!((r.checkpoints[2].1 - direct).abs() < 1e-14);
    assert!((direct - 2.0 * (2.0 * 2f64.ln() - 1.0)).abs() < 1e-14);
}

#[test]
fn decay_sequences_validate() {
    assert!(DecaySequence::new(vec![1.0, 2.0], None).is_err());
    assert!(DecaySequence::new(vec![1.0, 0.0], None).is_err());
    assert!(DecaySequence::new(vec![1.0, 1.0, 0.5], None).is_ok());
    assert!(prescribe_decay(DecayKind::Geometric(1.5), 4).is_err());
    for s in ["power:2", "reciprocal_log", "geometric:0.5"] {
        assert_eq!(s.parse::<DecayKind>().unwrap().to_string(), s);
    }
}
