//! Growth of an adversary that splits its power across several subtrees.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed when checking that allocations sum to at most one.
const SUM_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitRates {
    pub per_subtree_rates: Vec<f64>,
    /// Fastest single subtree.
    pub max_rate: f64,
    /// Sum over subtrees. Not ordered against `concentrated_rate` in general.
    pub sum_rate: f64,
    /// Rate when all allocated power mines one private chain.
    pub concentrated_rate: f64,
}

fn delayed(x: f64, delta_total: f64) -> f64 {
    x / (1.0 + x * delta_total)
}

pub fn split_strategy_rates(
    beta_allocations: &[f64],
    delta_total: f64,
    lambda_total: f64,
) -> Result<SplitRates> {
    if beta_allocations
        .iter()
        .any(|b| !(b.is_finite() && *b >= 0.0))
    {
        return Err(Error::invalid(
            "beta_allocations",
            "entries must be finite and >= 0",
        ));
    }
    if !(delta_total.is_finite() && delta_total >= 0.0) {
        return Err(Error::invalid("delta_total", "must be finite and >= 0"));
    }
    if !(lambda_total.is_finite() && lambda_total > 0.0) {
        return Err(Error::invalid("lambda_total", "must be finite and > 0"));
    }
    let total: f64 = beta_allocations.iter().sum();
    if total > 1.0 + SUM_SLACK {
        return Err(Error::Allocation { sum: total });
    }

    let per_subtree_rates: Vec<f64> = beta_allocations
        .iter()
        .map(|b| delayed(b * lambda_total, delta_total))
        .collect();
    let max_rate = per_subtree_rates.iter().copied().fold(0.0, f64::max);
    let sum_rate = per_subtree_rates.iter().sum();
    Ok(SplitRates {
        per_subtree_rates,
        max_rate,
        sum_rate,
        concentrated_rate: delayed(total * lambda_total, delta_total),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_subtree() {
        let r = split_strategy_rates(&[0.4], 1.0, 1.0).unwrap();
        assert!((r.concentrated_rate - 0.4 / 1.4).abs() < 1e-15);
        assert_eq!(r.max_rate, r.concentrated_rate);
        assert_eq!(r.sum_rate, r.concentrated_rate);
    }

    #[test]
    fn two_way_split() {
        let r = split_strategy_rates(&[0.2, 0.2], 1.0, 1.0).unwrap();
        for x in &r.per_subtree_rates {
            assert!((x - 1.0 / 6.0).abs() < 1e-15);
        }
        assert!(r.max_rate < r.concentrated_rate);
        // Subadditive f: splitting raises the aggregate.
        assert!((r.sum_rate - 1.0 / 3.0).abs() < 1e-15);
        assert!(r.sum_rate > r.concentrated_rate);
    }

    #[test]
    fn four_way_split() {
        let r = split_strategy_rates(&[0.1; 4], 1.0, 1.0).unwrap();
        assert!((r.max_rate - 0.1 / 1.1).abs() < 1e-15);
        assert!(r.max_rate < r.concentrated_rate);
    }

    #[test]
    fn over_allocation_rejected() {
        assert!(matches!(
            split_strategy_rates(&[0.6, 0.5], 1.0, 1.0),
            Err(Error::Allocation { .. })
        ));
        assert!(split_strategy_rates(&[-0.1], 1.0, 1.0).is_err());
    }

    #[test]
    fn empty_allocation_is_zero() {
        let r = split_strategy_rates(&[], 1.0, 1.0).unwrap();
        assert_eq!(r.max_rate, 0.0);
        assert_eq!(r.concentrated_rate, 0.0);
    }
}
