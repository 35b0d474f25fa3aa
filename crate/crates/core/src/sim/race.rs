//! Private-attack confirmation race.
//!
//! Both chains start from a common genesis. The honest chain is a renewal
//! process with its own freeze, the adversary mines privately under the
//! configured synchronization mode. A trial ends the moment the honest chain
//! reaches `confirm_depth`; the adversary wins if its private chain is at
//! least as long at that instant.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::SimConfig;
use super::event::EventQueue;
use super::growth::adversary_chain;
use super::process::{AdversaryChain, ExtensionProcess, RenewalChain};
use super::rng::{stream_rng, STREAM_ADVERSARY, STREAM_HONEST};
use crate::analytic::StaticParams;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RaceResult {
    pub success_count: u64,
    pub trials: u64,
    pub success_prob: f64,
    pub mean_honest_len: f64,
    pub mean_adv_len: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Honest,
    Adversary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct TrialOutcome {
    pub honest_len: u64,
    pub adv_len: u64,
}

impl TrialOutcome {
    pub fn adversary_wins(&self) -> bool {
        self.adv_len >= self.honest_len
    }
}

pub(crate) fn run_race<R1, R2>(
    mut honest: RenewalChain,
    mut adversary: AdversaryChain,
    confirm_depth: u64,
    honest_rng: &mut R1,
    adv_rng: &mut R2,
) -> TrialOutcome
where
    R1: Rng + ?Sized,
    R2: Rng + ?Sized,
{
    let mut queue = EventQueue::new();
    queue.schedule(honest.next_extension(honest_rng), Side::Honest);
    queue.schedule(adversary.next_extension(adv_rng), Side::Adversary);

    let (mut honest_len, mut adv_len) = (0u64, 0u64);
    while let Some((_, side)) = queue.pop() {
        match side {
            Side::Honest => {
                honest_len += 1;
                if honest_len == confirm_depth {
                    break;
                }
                queue.schedule(honest.next_extension(honest_rng), Side::Honest);
            }
            Side::Adversary => {
                adv_len += 1;
                queue.schedule(adversary.next_extension(adv_rng), Side::Adversary);
            }
        }
    }
    TrialOutcome {
        honest_len,
        adv_len,
    }
}

pub fn simulate_private_race(params: &StaticParams, config: &SimConfig) -> Result<RaceResult> {
    params.validate()?;
    config.validate()?;
    if !(params.beta > 0.0 && params.beta < 1.0) {
        return Err(Error::invalid("beta", "race needs 0 < beta < 1"));
    }
    let honest = RenewalChain::new(params.lambda_honest(), params.delta_honest)?;
    let adversary = adversary_chain(params.lambda_adv(), params.delta_adv, config.adv_sync_mode)?;
    let depth = u64::from(config.confirm_depth);

    let outcomes: Vec<TrialOutcome> = (0..config.trials)
        .into_par_iter()
        .map(|i| {
            let mut h = stream_rng(config.base_seed, i, STREAM_HONEST);
            let mut a = stream_rng(config.base_seed, i, STREAM_ADVERSARY);
            run_race(honest.clone(), adversary.clone(), depth, &mut h, &mut a)
        })
        .collect();
    Ok(summarize(&outcomes))
}

pub(crate) fn summarize(outcomes: &[TrialOutcome]) -> RaceResult {
    let trials = outcomes.len() as u64;
    let success_count = outcomes.iter().filter(|o| o.adversary_wins()).count() as u64;
    let honest: u64 = outcomes.iter().map(|o| o.honest_len).sum();
    let adv: u64 = outcomes.iter().map(|o| o.adv_len).sum();
    RaceResult {
        success_count,
        trials,
        success_prob: success_count as f64 / trials as f64,
        mean_honest_len: honest as f64 / trials as f64,
        mean_adv_len: adv as f64 / trials as f64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(depth: u32, trials: u64) -> SimConfig {
        SimConfig {
            confirm_depth: depth,
            trials,
            base_seed: 5,
            ..SimConfig::default()
        }
    }

    #[test]
    fn negligible_adversary_never_wins() {
        let p = StaticParams::new(10.0, 1e-12, 0.4, 0.4).unwrap();
        let r = simulate_private_race(&p, &cfg(6, 2000)).unwrap();
        assert_eq!(r.success_count, 0);
        assert_eq!(r.mean_honest_len, 6.0);
    }

    #[test]
    fn first_block_race_matches_rate_ratio() {
        // At depth 1 with no delays the adversary wins iff its first
        // exponential beats the honest one: probability beta.
        let p = StaticParams::new(10.0, 0.3, 0.0, 0.0).unwrap();
        let r = simulate_private_race(&p, &cfg(1, 40_000)).unwrap();
        let sd = (0.3f64 * 0.7 / 40_000.0).sqrt();
        assert!(
            (r.success_prob - 0.3).abs() < 4.0 * sd,
            "{}",
            r.success_prob
        );
    }

    #[test]
    fn rejects_degenerate_beta() {
        let p = StaticParams::new(10.0, 0.0, 0.4, 0.4).unwrap();
        assert!(simulate_private_race(&p, &cfg(6, 10)).is_err());
        let p = StaticParams::new(10.0, 1.0, 0.4, 0.4).unwrap();
        assert!(simulate_private_race(&p, &cfg(6, 10)).is_err());
    }

    #[test]
    fn summary_is_order_insensitive() {
        let mut o: Vec<TrialOutcome> = (0..50)
            .map(|i| TrialOutcome {
                honest_len: 6,
                adv_len: (i * 7) % 11,
            })
            .collect();
        let a = summarize(&o);
        o.reverse();
        o.swap(3, 17);
        assert_eq!(a, summarize(&o));
    }
}
