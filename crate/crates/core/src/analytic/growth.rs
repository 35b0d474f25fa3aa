//! Long-run chain growth rates under propagation delay.

use super::params::StaticParams;

/// Growth rate of a chain whose producers generate blocks at `rate` and must
/// wait `delay` after each extension before the next one can build on it.
///
/// Inter-extension times are `delay + Exp(rate)`, so the renewal rate is
/// `rate / (1 + rate * delay)`.
#[inline]
pub fn delayed_growth_rate(rate: f64, delay: f64) -> f64 {
    rate / (1.0 + rate * delay)
}

/// Effective growth rate of the adversary's private chain given internal
/// synchronization delay `delta_adv`.
#[inline]
pub fn effective_adversarial_rate(lambda_a: f64, delta_adv: f64) -> f64 {
    delayed_growth_rate(lambda_a, delta_adv)
}

/// Growth rate of the honest longest chain given honest propagation delay.
#[inline]
pub fn honest_growth_rate(lambda_h: f64, delta_honest: f64) -> f64 {
    delayed_growth_rate(lambda_h, delta_honest)
}

/// True when the honest chain strictly outgrows the adversary's private chain.
pub fn security_condition_holds(params: &StaticParams) -> bool {
    effective_adversarial_rate(params.lambda_adv(), params.delta_adv)
        < honest_growth_rate(params.lambda_honest(), params.delta_honest)
}
