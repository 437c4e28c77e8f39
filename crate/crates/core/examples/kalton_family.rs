//! Kalton-type instances: scaling exponent, weights and singular-value
//! envelopes, for the three coupling strategies.

use katolab::diagnostics::kato_constants;
use katolab::factory::{gen_kalton, verify_singular_value_equivalences, KaltonStrategy};
use katolab::spectral::{prescribe_decay, DecayKind};

fn main() -> katolab::Result<()> {
    let n = 16;
    let decay = prescribe_decay(DecayKind::ReciprocalLog, n)?;
    for strategy in [KaltonStrategy::Random, KaltonStrategy::ShiftCoupling, KaltonStrategy::AdversarialSearch(16)] {
        let inst = gen_kalton(n, 1, &decay, strategy, None)?;
        let env = verify_singular_value_equivalences(&inst.pair, &inst.model)?;
        println!(
            "{:<16} m = {} gamma = {:.4} kappa = {:.6} s(T)/s(ImA) in [{:.3}, {:.3}] (allowed [{:.3}, {:.3}])",
            strategy.to_string(),
            inst.m_used,
            inst.gamma,
            kato_constants(&inst.pair)?.kappa,
            env.t_vs_im_a.ratio_min,
            env.t_vs_im_a.ratio_max,
            env.t_vs_im_a.lower,
            env.t_vs_im_a.upper
        );
    }
    Ok(())
}
