//! Exact binomial upper tail by term-wise summation in log space.

use statrs::function::factorial::ln_binomial;

/// Largest trial count for which the tail is summed exactly.
pub const EXACT_TAIL_MAX_N: u64 = 1_000_000;

/// Relative size below which further terms are dropped.
const TERM_CUTOFF: f64 = 1e-18;

/// Below this size the boundary term is formed by direct products, which are
/// exact for dyadic `p` and keep small cases free of exp/ln rounding.
const DIRECT_PMF_MAX_N: u64 = 1000;

fn pmf(n: u64, k: u64, p: f64, q: f64) -> f64 {
    if n <= DIRECT_PMF_MAX_N {
        let kk = k.min(n - k);
        let mut c = 1.0;
        for i in 0..kk {
            c = c * (n - i) as f64 / (i + 1) as f64;
        }
        let v = c * p.powi(k as i32) * q.powi((n - k) as i32);
        if v.is_finite() && v >= 1e-290 {
            return v;
        }
    }
    (ln_binomial(n, k) + k as f64 * p.ln() + (n - k) as f64 * q.ln()).exp()
}

/// `first * sum` without underflowing when `first` alone would.
fn scaled(first_ln: f64, first: f64, sum: f64) -> f64 {
    if first > 0.0 {
        first * sum
    } else {
        (first_ln + sum.ln()).exp()
    }
}

fn ln_pmf(n: u64, k: u64, p: f64, q: f64) -> f64 {
    ln_binomial(n, k) + k as f64 * p.ln() + (n - k) as f64 * q.ln()
}

/// `Pr[X > threshold]` for `X ~ Binomial(n, p)`, with a strict inequality.
///
/// The sum starts at the boundary term and walks away from it, towards the
/// mode when the boundary lies above it and towards zero otherwise, using the
/// pmf ratio recurrence. Terms are kept relative to the first one so deep
/// tails do not underflow before the final rescale.
pub fn binomial_upper_tail(n: u64, p: f64, threshold: f64) -> f64 {
    assert!((0.0..=1.0).contains(&p), "p must lie in [0, 1]");
    if threshold.is_nan() {
        return f64::NAN;
    }
    if threshold < 0.0 {
        return 1.0;
    }
    if threshold >= n as f64 {
        return 0.0;
    }
    // Smallest count strictly above the threshold.
    let k_min = threshold.floor() as u64 + 1;
    if p == 0.0 {
        return 0.0;
    }
    if p == 1.0 {
        return 1.0;
    }

    let q = 1.0 - p;
    let odds = p / q;
    let mode = ((n as f64 + 1.0) * p).floor() as u64;

    if k_min > mode {
        // Terms decrease monotonically for k > mode.
        let first = pmf(n, k_min, p, q);
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = k_min;
        while k < n {
            term *= (n - k) as f64 / (k + 1) as f64 * odds;
            sum += term;
            k += 1;
            if term < TERM_CUTOFF * sum {
                break;
            }
        }
        scaled(ln_pmf(n, k_min, p, q), first, sum).min(1.0)
    } else {
        // Lower cdf Pr[X <= k_min - 1], terms decreasing as k falls below the mode.
        let top = k_min - 1;
        let first = pmf(n, top, p, q);
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = top;
        while k > 0 {
            term *= k as f64 / (n - k + 1) as f64 / odds;
            sum += term;
            k -= 1;
            if term < TERM_CUTOFF * sum {
                break;
            }
        }
        let lower = scaled(ln_pmf(n, top, p, q), first, sum);
        (1.0 - lower).clamp(0.0, 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force tail from pmf products, independent of the recurrence.
    fn enumerate_tail(n: u64, p: f64, threshold: f64) -> f64 {
        (0..=n)
            .filter(|&k| k as f64 > threshold)
            .map(|k| {
                let mut c = 1.0;
                for i in 0..k {
                    c *= (n - i) as f64 / (i + 1) as f64;
                }
                c * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32)
            })
            .sum()
    }

    #[test]
    fn four_fair_coins() {
        // X in {3, 4}: (4 + 1) / 16.
        assert_eq!(binomial_upper_tail(4, 0.5, 2.0), 5.0 / 16.0);
    }

    #[test]
    fn zero_threshold_ten_coins() {
        let t = binomial_upper_tail(10, 0.5, 0.0);
        assert!((t - (1.0 - 2f64.powi(-10))).abs() < 1e-15);
    }

    #[test]
    fn impossible_and_certain() {
        assert_eq!(binomial_upper_tail(10, 0.3, 10.0), 0.0);
        assert_eq!(binomial_upper_tail(10, 0.3, -0.5), 1.0);
    }

    #[test]
    fn matches_enumeration() {
        for &(n, p) in &[(1, 0.5), (7, 0.2), (30, 0.65), (60, 0.05), (100, 0.1)] {
            for i in 0..=(2 * n) {
                let t = i as f64 * 0.5 - 0.25;
                let a = binomial_upper_tail(n, p, t);
                let b = enumerate_tail(n, p, t);
                assert!((a - b).abs() < 1e-13, "n={n} p={p} t={t}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn deep_tail_keeps_relative_precision() {
        // Pr[X = n] = p^n dominates the tail of X > n - 1.
        let t = binomial_upper_tail(200, 0.1, 199.0);
        assert!((t / 1e-200 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn large_n_against_statrs() {
        use statrs::distribution::{Binomial, DiscreteCDF};
        let d = Binomial::new(0.001, 1_000_000).unwrap();
        for k in [900u64, 1000, 1050, 1100, 1200] {
            let a = binomial_upper_tail(1_000_000, 0.001, k as f64);
            let b = d.sf(k);
            assert!((a - b).abs() < 1e-9 * b.max(1e-3), "k={k}: {a} vs {b}");
        }
    }
}
