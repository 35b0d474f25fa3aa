//! Monte Carlo of the binomial corruption model.
//!
//! Each validator is corrupted independently with probability `p`, so the
//! corrupted share is `X / n_val` with `X ~ Binomial(n_val, p)`. Exceedance is
//! strict: a share equal to the threshold counts as secure.

use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::binomial::{binomial_upper_tail, EXACT_TAIL_MAX_N};
use crate::analytic::dynamic::{
    asymptotic_threshold, corruption_probability_at, dynamic_threshold_exact,
};
use crate::analytic::normal::normal_sf;
use crate::analytic::security::standardized_threshold;
use crate::analytic::DynamicParams;
use crate::error::{Error, Result};
use crate::sim::growth::Z95;
use crate::sim::rng::{stream_rng, STREAM_CORRUPTION};

/// Draws per random stream. Chunk `c` of a run reads stream
/// `(base_seed, c, STREAM_CORRUPTION)`, so samples do not depend on threads.
pub const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorruptionRun {
    pub n_val: u64,
    pub p: f64,
    pub trials: u64,
    pub base_seed: u64,
    pub beta_star: f64,
}

impl CorruptionRun {
    pub fn validate(&self) -> Result<()> {
        if self.n_val < 1 {
            return Err(Error::invalid("n_val", "must be >= 1"));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::invalid("p", "must lie strictly inside (0, 1)"));
        }
        if self.trials < 1 {
            return Err(Error::invalid("trials", "must be >= 1"));
        }
        if self.beta_star.is_nan() {
            return Err(Error::invalid("beta_star", "must not be NaN"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExceedanceEstimate {
    pub exceed_count: u64,
    pub trials: u64,
    pub mc_estimate: f64,
    /// Wilson 95% interval.
    pub ci_low: f64,
    pub ci_high: f64,
    /// Exact binomial tail, absent above the exact-summation limit.
    pub exact: Option<f64>,
    /// Gaussian approximation `1 - Phi(z_n)`, zero when the threshold is at or
    /// above the support maximum of one.
    pub gaussian: f64,
}

fn corrupted_counts(run: &CorruptionRun) -> Vec<u64> {
    let dist = Binomial::new(run.n_val, run.p).expect("validated binomial parameters");
    let chunks = run.trials.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = stream_rng(run.base_seed, c, STREAM_CORRUPTION);
            let len = CHUNK.min(run.trials - c * CHUNK);
            (0..len)
                .map(move |_| dist.sample(&mut rng))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Independent draws of the corrupted share `X / n_val`.
pub fn sample_corruption(run: &CorruptionRun) -> Result<Vec<f64>> {
    run.validate()?;
    let n = run.n_val as f64;
    Ok(corrupted_counts(run)
        .into_iter()
        .map(|x| x as f64 / n)
        .collect())
}

/// Wilson score interval for `successes` out of `trials`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = (center - half).clamp(0.0, 1.0).min(phat);
    let hi = (center + half).clamp(0.0, 1.0).max(phat);
    (lo, hi)
}

/// Gaussian exceedance with the support of the share respected: no share can
/// exceed one, and every share exceeds a negative threshold.
fn gaussian_exceedance(n_val: u64, beta_star: f64, p: f64) -> Result<f64> {
    if beta_star >= 1.0 {
        return Ok(0.0);
    }
    if beta_star < 0.0 {
        return Ok(1.0);
    }
    Ok(normal_sf(standardized_threshold(n_val, beta_star, p)?))
}

pub fn mc_exceedance(run: &CorruptionRun) -> Result<ExceedanceEstimate> {
    run.validate()?;
    let threshold = run.beta_star * run.n_val as f64;
    // Same comparison as the exact tail: X > beta_star * n_val.
    let exceed_count = corrupted_counts(run)
        .into_iter()
        .filter(|&x| x as f64 > threshold)
        .count() as u64;
    let (ci_low, ci_high) = wilson_interval(exceed_count, run.trials, Z95);
    let exact =
        (run.n_val <= EXACT_TAIL_MAX_N).then(|| binomial_upper_tail(run.n_val, run.p, threshold));
    Ok(ExceedanceEstimate {
        exceed_count,
        trials: run.trials,
        mc_estimate: exceed_count as f64 / run.trials as f64,
        ci_low,
        ci_high,
        exact,
        gaussian: gaussian_exceedance(run.n_val, run.beta_star, run.p)?,
    })
}

/// How the sweep picks the threshold at each scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "rule")]
pub enum ThresholdRule {
    /// `1 / (2 + lambda sync_c ln n)`.
    Asymptotic {
        lambda_total: f64,
        sync_c: f64,
    },
    /// Root of the dynamic boundary, with both node counts set to `n`.
    Exact {
        template: DynamicParams,
    },
    Constant {
        beta_star: f64,
    },
}

impl ThresholdRule {
    pub fn beta_star(&self, n: u64) -> Result<f64> {
        match *self {
            ThresholdRule::Asymptotic {
                lambda_total,
                sync_c,
            } => {
                if n < 2 {
                    return Err(Error::Domain(format!(
                        "asymptotic rule needs n >= 2, got {n}"
                    )));
                }
                Ok(asymptotic_threshold(n as f64, lambda_total, sync_c))
            }
            ThresholdRule::Exact { template } => {
                Ok(dynamic_threshold_exact(&template.with_scale(n))?.beta_star)
            }
            ThresholdRule::Constant { beta_star } => Ok(beta_star),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n_val: u64,
    pub p_star: f64,
    pub beta_star: f64,
    pub estimate: ExceedanceEstimate,
}

impl SweepRow {
    /// `|gaussian - exact|`, when the exact tail is available.
    pub fn gap(&self) -> Option<f64> {
        self.estimate
            .exact
            .map(|e| (self.estimate.gaussian - e).abs())
    }
}

/// Exceedance along a scale grid with `p*(n) = corr_c / sqrt(n)`.
pub fn clt_convergence_sweep(
    corr_c: f64,
    n_grid: &[u64],
    rule: &ThresholdRule,
    trials: u64,
    base_seed: u64,
) -> Result<Vec<SweepRow>> {
    if n_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("n_grid", "must be strictly ascending"));
    }
    n_grid
        .iter()
        .map(|&n| {
            let p_star = corruption_probability_at(corr_c, n)?;
            let beta_star = rule.beta_star(n)?;
            let estimate = mc_exceedance(&CorruptionRun {
                n_val: n,
                p: p_star,
                trials,
                base_seed,
                beta_star,
            })?;
            Ok(SweepRow {
                n_val: n,
                p_star,
                beta_star,
                estimate,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n_val: u64, p: f64, beta_star: f64, trials: u64) -> CorruptionRun {
        CorruptionRun {
            n_val,
            p,
            trials,
            base_seed: 99,
            beta_star,
        }
    }

    #[test]
    fn single_bernoulli() {
        let s = sample_corruption(&run(1, 0.5, 0.5, 20_000)).unwrap();
        assert!(s.iter().all(|&b| b == 0.0 || b == 1.0));
        let mean = s.iter().sum::<f64>() / s.len() as f64;
        assert!((mean - 0.5).abs() < 0.02);
    }

    #[test]
    fn sample_length_and_determinism() {
        let r = run(50, 0.2, 0.3, 10_000);
        let a = sample_corruption(&r).unwrap();
        assert_eq!(a.len(), 10_000);
        assert_eq!(a, sample_corruption(&r).unwrap());
    }

    #[test]
    fn full_threshold_is_impossible() {
        let e = mc_exceedance(&run(4, 0.5, 1.0, 10_000)).unwrap();
        assert_eq!(e.exceed_count, 0);
        assert_eq!(e.exact, Some(0.0));
        assert_eq!(e.gaussian, 0.0);
    }

    #[test]
    fn zero_threshold_ten_coins() {
        let e = mc_exceedance(&run(10, 0.5, 0.0, 100_000)).unwrap();
        let expect = 1.0 - 2f64.powi(-10);
        assert!((e.exact.unwrap() - expect).abs() < 1e-15);
        assert!(e.ci_low <= expect && expect <= e.ci_high);
    }

    #[test]
    fn wilson_brackets_estimate() {
        for (k, n) in [(0u64, 100u64), (1, 100), (50, 100), (100, 100), (3, 7)] {
            let (lo, hi) = wilson_interval(k, n, Z95);
            let phat = k as f64 / n as f64;
            assert!(lo <= phat && phat <= hi);
            assert!((0.0..=1.0).contains(&lo) && (0.0..=1.0).contains(&hi));
        }
        let (lo, hi) = wilson_interval(0, 100, Z95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.05);
    }

    #[test]
    fn exact_omitted_for_huge_networks() {
        let e = mc_exceedance(&run(2_000_000, 1e-3, 0.01, 100)).unwrap();
        assert!(e.exact.is_none());
    }

    #[test]
    fn rejects_invalid_runs() {
        assert!(mc_exceedance(&run(0, 0.5, 0.5, 10)).is_err());
        assert!(mc_exceedance(&run(4, 0.0, 0.5, 10)).is_err());
        assert!(mc_exceedance(&run(4, 0.5, 0.5, 0)).is_err());
    }

    #[test]
    fn sweep_requires_ascending_grid() {
        let rule = ThresholdRule::Constant { beta_star: 0.5 };
        assert!(clt_convergence_sweep(1.0, &[1000, 100], &rule, 10, 1).is_err());
    }

    #[test]
    fn sweep_with_unit_threshold_is_all_zero() {
        let rule = ThresholdRule::Constant { beta_star: 1.0 };
        let rows = clt_convergence_sweep(1.0, &[100, 1000], &rule, 1000, 1).unwrap();
        for r in rows {
            assert_eq!(r.estimate.mc_estimate, 0.0);
            assert_eq!(r.estimate.exact, Some(0.0));
            assert_eq!(r.estimate.gaussian, 0.0);
        }
    }

    #[test]
    fn single_row_sweep_matches_direct_call() {
        let rule = ThresholdRule::Asymptotic {
            lambda_total: 1.0,
            sync_c: 1.0,
        };
        let rows = clt_convergence_sweep(1.0, &[100], &rule, 50_000, 3).unwrap();
        assert_eq!(rows.len(), 1);
        let direct = mc_exceedance(&CorruptionRun {
            n_val: 100,
            p: 0.1,
            trials: 50_000,
            base_seed: 3,
            beta_star: rule.beta_star(100).unwrap(),
        })
        .unwrap();
        assert_eq!(rows[0].estimate, direct);
    }
}
