//! Probability that the corrupted share exceeds the security threshold.

use serde::{Deserialize, Serialize};

use super::binomial::{binomial_upper_tail, EXACT_TAIL_MAX_N};
use super::dynamic::{corruption_probability, dynamic_threshold_asymptotic};
use super::normal::{normal_cdf, normal_sf};
use super::params::DynamicParams;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SecurityReport {
    pub n_val: u64,
    pub beta_star: f64,
    pub p_star: f64,
    /// Standardized distance between threshold and mean corruption.
    pub z_n: f64,
    /// `1 - Phi(z_n)`.
    pub pr_exceed_gaussian: f64,
    /// Binomial tail `Pr[X > beta_star n_val]`.
    pub pr_exceed_exact: f64,
    /// True when `n_val` was too large for exact summation and the exact field
    /// carries the Gaussian value instead.
    pub exact_is_gaussian: bool,
    /// Filled in by a Monte Carlo run, if any.
    pub pr_exceed_mc: Option<f64>,
}

impl SecurityReport {
    /// `Pr[beta <= beta_star]` under the Gaussian approximation, `Phi(z_n)`.
    pub fn pr_secure(&self) -> f64 {
        normal_cdf(self.z_n)
    }
}

/// `sqrt(n_val) (beta_star - p_star) / sqrt(p_star (1 - p_star))`.
pub fn standardized_threshold(n_val: u64, beta_star: f64, p_star: f64) -> Result<f64> {
    if !(p_star > 0.0 && p_star < 1.0) {
        return Err(Error::Domain(format!(
            "p_star must lie strictly inside (0, 1), got {p_star}"
        )));
    }
    Ok((n_val as f64).sqrt() * (beta_star - p_star) / (p_star * (1.0 - p_star)).sqrt())
}

/// Report for an explicit threshold and corruption probability.
pub fn exceedance_report(n_val: u64, beta_star: f64, p_star: f64) -> Result<SecurityReport> {
    if n_val == 0 {
        return Err(Error::Domain("n_val must be >= 1".into()));
    }
    let z_n = standardized_threshold(n_val, beta_star, p_star)?;
    let pr_exceed_gaussian = normal_sf(z_n);
    let exact_is_gaussian = n_val > EXACT_TAIL_MAX_N;
    let pr_exceed_exact = if exact_is_gaussian {
        pr_exceed_gaussian
    } else {
        binomial_upper_tail(n_val, p_star, beta_star * n_val as f64)
    };
    Ok(SecurityReport {
        n_val,
        beta_star,
        p_star,
        z_n,
        pr_exceed_gaussian,
        pr_exceed_exact,
        exact_is_gaussian,
        pr_exceed_mc: None,
    })
}

/// Report for a dynamic parameter set, pairing the asymptotic threshold with
/// the validator corruption probability.
pub fn exceedance_probability(params: &DynamicParams) -> Result<SecurityReport> {
    params.validate()?;
    let beta_star = dynamic_threshold_asymptotic(params)?.beta_star;
    let p_star = corruption_probability(params)?;
    exceedance_report(params.n_val, beta_star, p_star)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standardized_examples() {
        assert!((standardized_threshold(100, 0.4, 0.1).unwrap() - 10.0).abs() < 1e-12);
        assert_eq!(standardized_threshold(12345, 0.2, 0.2).unwrap(), 0.0);
        assert!(standardized_threshold(10, 0.2, 0.0).is_err());
        assert!(standardized_threshold(10, 0.2, 1.0).is_err());
        assert!(standardized_threshold(10, 0.05, 0.2).unwrap() < 0.0);
    }

    #[test]
    fn standardized_chains_asymptotic_threshold() {
        let beta = 1.0 / (2.0 + 1e4f64.ln());
        let z = standardized_threshold(10_000, beta, 0.01).unwrap();
        assert!((z - 79.6).abs() < 0.05, "{z}");
    }

    #[test]
    fn forced_fair_coins() {
        let r = exceedance_report(4, 0.5, 0.5).unwrap();
        assert!((r.pr_exceed_exact - 0.3125).abs() < 1e-15);
        assert!(!r.exact_is_gaussian);
        assert_eq!(r.pr_exceed_gaussian, normal_sf(r.z_n));
    }

    #[test]
    fn forced_ten_sigma() {
        let r = exceedance_report(100, 0.4, 0.1).unwrap();
        assert!(r.pr_exceed_gaussian < 1e-20);
    }

    #[test]
    fn large_networks_fall_back_to_gaussian() {
        let r = exceedance_report(10_000_000, 0.01, 1e-3).unwrap();
        assert!(r.exact_is_gaussian);
        assert_eq!(r.pr_exceed_exact, r.pr_exceed_gaussian);
    }

    #[test]
    fn z_grows_with_scale() {
        let base = DynamicParams {
            n_total: 100,
            n_val: 100,
            delay_coeff: 0.05,
            topo_k: 1.0,
            sync_c: 1.0,
            corr_c: 1.0,
            lambda_total: 1.0,
        };
        let zs: Vec<f64> = [100u64, 10_000, 1_000_000, 100_000_000]
            .iter()
            .map(|&n| exceedance_probability(&base.with_scale(n)).unwrap().z_n)
            .collect();
        assert!(zs.windows(2).all(|w| w[1] > w[0]), "{zs:?}");
    }
}
