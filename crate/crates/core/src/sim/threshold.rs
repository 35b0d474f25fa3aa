//! Empirical location of the growth-rate crossing.

use serde::{Deserialize, Serialize};

use super::config::SimConfig;
use super::growth::{simulate_adversarial_growth, simulate_honest_growth};
use crate::analytic::params::check_delay;
use crate::error::{Error, Result};

/// Final bracket width on the estimated threshold.
pub const BRACKET_WIDTH: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalThreshold {
    /// Midpoint of the final bracket.
    pub beta_hat: f64,
    pub lo: f64,
    pub hi: f64,
    pub steps: u32,
}

/// Bisects the adversarial share on the sign of (simulated adversarial rate
/// minus simulated honest rate). Every step reuses the same seed, so the
/// exponential draws are common across steps and only the rates change.
pub fn estimate_empirical_threshold(
    lambda_total: f64,
    delta_honest: f64,
    delta_adv: f64,
    config: &SimConfig,
) -> Result<EmpiricalThreshold> {
    if !(lambda_total.is_finite() && lambda_total > 0.0) {
        return Err(Error::invalid("lambda_total", "must be finite and > 0"));
    }
    check_delay("delta_honest", delta_honest)?;
    check_delay("delta_adv", delta_adv)?;
    config.validate()?;

    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut steps = 0;
    while hi - lo > BRACKET_WIDTH {
        let beta = 0.5 * (lo + hi);
        let adv = simulate_adversarial_growth(beta * lambda_total, delta_adv, config)?;
        let honest = simulate_honest_growth((1.0 - beta) * lambda_total, delta_honest, config)?;
        if adv.empirical_rate < honest.empirical_rate {
            lo = beta;
        } else {
            hi = beta;
        }
        steps += 1;
    }
    Ok(EmpiricalThreshold {
        beta_hat: 0.5 * (lo + hi),
        lo,
        hi,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_contract() {
        let c = SimConfig {
            horizon: 2e4,
            trials: 1,
            ..SimConfig::default()
        };
        let t = estimate_empirical_threshold(10.0, 0.4, 0.4, &c).unwrap();
        assert!(t.hi - t.lo <= BRACKET_WIDTH);
        assert!(t.lo <= t.beta_hat && t.beta_hat <= t.hi);
        assert!((t.beta_hat - 0.5).abs() < 0.05);
    }

    #[test]
    fn rejects_bad_rate() {
        assert!(estimate_empirical_threshold(0.0, 0.4, 0.4, &SimConfig::default()).is_err());
    }
}
