//! Standard normal distribution functions.
//!
//! Both tails are evaluated through the complementary error function, so the
//! upper tail keeps full relative precision far beyond the point where
//! `1 - cdf(z)` would round to zero.

use libm::erfc;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// Standard normal CDF.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

/// Upper tail `1 - normal_cdf(z)`, evaluated without cancellation.
pub fn normal_sf(z: f64) -> f64 {
    normal_cdf(-z)
}

/// Standard normal density.
pub fn normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_at_zero() {
        assert_eq!(normal_cdf(0.0), 0.5);
    }

    #[test]
    fn reflection() {
        for z in [0.5, 1.0, 2.0, 5.0] {
            assert!((normal_cdf(-z) - (1.0 - normal_cdf(z))).abs() < 1e-15);
        }
    }

    #[test]
    fn known_values() {
        assert!((normal_cdf(1.959_963_984_540_054) - 0.975).abs() < 1e-14);
        assert!((normal_cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-15);
    }

    #[test]
    fn ten_sigma_tail() {
        let tail = normal_sf(10.0);
        assert!(tail > 0.0 && tail < 1e-20);
        // Mills ratio bounds: phi(z) z/(1+z^2) < sf(z) < phi(z)/z.
        let phi = normal_pdf(10.0);
        assert!(tail < phi / 10.0);
        assert!(tail > phi * 10.0 / 101.0);
    }

    #[test]
    fn tail_survives_past_thirty_sigma() {
        assert!(normal_sf(37.0) > 0.0);
        assert!(normal_cdf(-37.0) > 0.0);
    }
}
