//! Long-horizon growth-rate experiments.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{AdvSyncMode, SimConfig};
use super::process::{AdversaryChain, ExtensionProcess, PipelinedQueue, RenewalChain};
use super::rng::{stream_rng, STREAM_ADVERSARY, STREAM_HONEST};
use crate::error::{Error, Result};

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthEstimate {
    /// Blocks per simulated second, averaged over trials.
    pub empirical_rate: f64,
    /// Blocks summed over all trials.
    pub block_count: u64,
    /// Per-trial block counts in trial order.
    pub trial_counts: Vec<u64>,
    /// 95% half-width on `empirical_rate`.
    pub ci_halfwidth: f64,
    pub horizon: f64,
}

#[derive(Debug, Clone, Copy)]
struct TrialGrowth {
    count: u64,
    /// Mean and variance of inter-extension gaps, for single-trial intervals.
    gap_mean: f64,
    gap_var: f64,
}

fn run_trial<P, R>(mut process: P, horizon: f64, rng: &mut R) -> TrialGrowth
where
    P: ExtensionProcess,
    R: Rng + ?Sized,
{
    let mut count = 0u64;
    let mut prev = 0.0;
    // Welford over gaps.
    let (mut mean, mut m2) = (0.0, 0.0);
    loop {
        let t = process.next_extension(rng);
        if t > horizon {
            break;
        }
        count += 1;
        let gap = t - prev;
        prev = t;
        let d = gap - mean;
        mean += d / count as f64;
        m2 += d * (gap - mean);
    }
    TrialGrowth {
        count,
        gap_mean: mean,
        gap_var: if count > 1 {
            m2 / (count - 1) as f64
        } else {
            0.0
        },
    }
}

fn aggregate(trials: Vec<TrialGrowth>, horizon: f64) -> GrowthEstimate {
    let n = trials.len() as u64;
    // Integer sums: exact and independent of trial order.
    let block_count: u64 = trials.iter().map(|t| t.count).sum();
    let sum_sq: u128 = trials
        .iter()
        .map(|t| t.count as u128 * t.count as u128)
        .sum();
    let empirical_rate = block_count as f64 / (n as f64 * horizon);

    let ci_halfwidth = if n >= 2 {
        let total = block_count as u128;
        let scaled = n as u128 * sum_sq - total * total;
        let var_count = scaled as f64 / (n as f64 * (n - 1) as f64);
        Z95 * (var_count / n as f64).sqrt() / horizon
    } else {
        // Renewal CLT: Var N(T) ~ T sigma^2 / mu^3.
        let t = &trials[0];
        if t.count < 2 || t.gap_mean <= 0.0 {
            0.0
        } else {
            Z95 * (t.gap_var / (t.gap_mean.powi(3) * horizon)).sqrt()
        }
    };
    GrowthEstimate {
        empirical_rate,
        block_count,
        trial_counts: trials.iter().map(|t| t.count).collect(),
        ci_halfwidth,
        horizon,
    }
}

/// Honest chain growth: each extension freezes producers for `delta_honest`,
/// blocks mined meanwhile are wasted.
pub fn simulate_honest_growth(
    lambda_h: f64,
    delta_honest: f64,
    config: &SimConfig,
) -> Result<GrowthEstimate> {
    config.validate()?;
    let proto = RenewalChain::new(lambda_h, delta_honest)?;
    let trials = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(config.base_seed, i, STREAM_HONEST);
            run_trial(proto.clone(), config.horizon, &mut rng)
        })
        .collect();
    Ok(aggregate(trials, config.horizon))
}

pub(crate) fn adversary_chain(
    lambda_a: f64,
    delta_adv: f64,
    mode: AdvSyncMode,
) -> Result<AdversaryChain> {
    if !(lambda_a.is_finite() && lambda_a > 0.0) {
        return Err(Error::invalid("lambda_a", "must be finite and > 0"));
    }
    Ok(match mode {
        AdvSyncMode::SerialSync => AdversaryChain::Serial(RenewalChain::new(lambda_a, delta_adv)?),
        AdvSyncMode::PipelinedQueue => {
            AdversaryChain::Pipelined(PipelinedQueue::new(lambda_a, delta_adv)?)
        }
    })
}

/// Adversarial private-chain growth under the configured synchronization mode.
pub fn simulate_adversarial_growth(
    lambda_a: f64,
    delta_adv: f64,
    config: &SimConfig,
) -> Result<GrowthEstimate> {
    config.validate()?;
    let proto = adversary_chain(lambda_a, delta_adv, config.adv_sync_mode)?;
    let trials = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(config.base_seed, i, STREAM_ADVERSARY);
            run_trial(proto.clone(), config.horizon, &mut rng)
        })
        .collect();
    Ok(aggregate(trials, config.horizon))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(horizon: f64, trials: u64) -> SimConfig {
        SimConfig {
            horizon,
            trials,
            base_seed: 11,
            ..SimConfig::default()
        }
    }

    #[test]
    fn pure_poisson_honest() {
        let g = simulate_honest_growth(0.5, 0.0, &cfg(2e5, 1)).unwrap();
        assert!((g.empirical_rate - 0.5).abs() <= 3.0 * g.ci_halfwidth);
        assert!(g.ci_halfwidth > 0.0);
    }

    #[test]
    fn zero_service_pipelined_is_poisson() {
        let c = SimConfig {
            adv_sync_mode: AdvSyncMode::PipelinedQueue,
            ..cfg(2e5, 2)
        };
        let g = simulate_adversarial_growth(0.5, 0.0, &c).unwrap();
        assert!((g.empirical_rate - 0.5).abs() < 0.01);
    }

    #[test]
    fn across_trial_interval() {
        let g = simulate_honest_growth(2.0, 1.0, &cfg(1e4, 8)).unwrap();
        assert_eq!(g.trial_counts.len(), 8);
        assert_eq!(g.trial_counts.iter().sum::<u64>(), g.block_count);
        assert!(g.ci_halfwidth > 0.0);
        assert!((g.empirical_rate - 2.0 / 3.0).abs() <= 4.0 * g.ci_halfwidth);
    }

    #[test]
    fn pipelined_unstable_rejected() {
        let c = SimConfig {
            adv_sync_mode: AdvSyncMode::PipelinedQueue,
            ..cfg(1e3, 1)
        };
        assert!(matches!(
            simulate_adversarial_growth(2.0, 0.5, &c),
            Err(Error::UnstableQueue { .. })
        ));
    }

    #[test]
    fn rejects_bad_config() {
        assert!(simulate_honest_growth(1.0, 0.0, &cfg(0.0, 1)).is_err());
        assert!(simulate_honest_growth(1.0, 0.0, &cfg(1.0, 0)).is_err());
        assert!(simulate_honest_growth(0.0, 0.0, &cfg(1.0, 1)).is_err());
    }
}
