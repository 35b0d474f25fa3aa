use dualdelay_core::analytic::binomial_upper_tail;
use dualdelay_core::corruption::{
    clt_convergence_sweep, mc_exceedance, sample_corruption, ThresholdRule,
};
use dualdelay_core::CorruptionRun;

fn moments(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

#[test]
fn sample_moments_match_binomial() {
    let run = CorruptionRun {
        n_val: 100,
        p: 0.1,
        trials: 1_000_000,
        base_seed: 1,
        beta_star: 0.5,
    };
    let (mean, var) = moments(&sample_corruption(&run).unwrap());
    let expect_var: f64 = 0.1 * 0.9 / 100.0;
    assert!(
        (mean - 0.1).abs() <= 4.0 * (expect_var / 1e6).sqrt(),
        "mean {mean}"
    );
    assert!((var - expect_var).abs() <= 0.05 * expect_var, "var {var}");
}

#[test]
fn sparse_corruption_mean() {
    let run = CorruptionRun {
        n_val: 10_000,
        p: 1e-3,
        trials: 1_000_000,
        base_seed: 2,
        beta_star: 0.5,
    };
    let (mean, _) = moments(&sample_corruption(&run).unwrap());
    assert!((mean - 1e-3).abs() <= 1e-4);
}

#[test]
fn enumeration_ground_truth() {
    let run = CorruptionRun {
        n_val: 4,
        p: 0.5,
        trials: 1_000_000,
        base_seed: 3,
        beta_star: 0.5,
    };
    let e = mc_exceedance(&run).unwrap();
    assert_eq!(e.exact, Some(5.0 / 16.0));
    assert!(e.ci_low <= 0.3125 && 0.3125 <= e.ci_high);
}

#[test]
fn wilson_interval_coverage() {
    let (n_val, p, beta_star) = (30, 0.2, 0.3);
    let exact = binomial_upper_tail(n_val, p, beta_star * n_val as f64);
    // 1000 repeats rather than 100: at a true 95% rate, a block of 100 falls
    // below 93 by chance about one time in seven.
    let covered = (0..1000)
        .filter(|&seed| {
            let e = mc_exceedance(&CorruptionRun {
                n_val,
                p,
                trials: 2000,
                base_seed: 1000 + seed,
                beta_star,
            })
            .unwrap();
            e.ci_low <= exact && exact <= e.ci_high
        })
        .count();
    assert!(covered >= 930, "covered {covered}/1000");
}

#[test]
fn clt_gap_shrinks_to_endpoint() {
    let rule = ThresholdRule::Asymptotic {
        lambda_total: 1.0,
        sync_c: 1.0,
    };
    let rows = clt_convergence_sweep(1.0, &[100, 1000, 10_000], &rule, 20_000, 4).unwrap();
    let gaps: Vec<f64> = rows.iter().map(|r| r.gap().unwrap()).collect();
    assert!(gaps[2] < gaps[0] && gaps[2] < 0.005, "{gaps:?}");
    let exact: Vec<f64> = rows.iter().map(|r| r.estimate.exact.unwrap()).collect();
    assert!(exact.windows(2).all(|w| w[1] <= w[0]));
    assert!(exact[2] < 1e-3);
}

#[test]
fn runs_are_reproducible() {
    let run = CorruptionRun {
        n_val: 500,
        p: 0.05,
        trials: 50_000,
        base_seed: 5,
        beta_star: 0.07,
    };
    assert_eq!(mc_exceedance(&run).unwrap(), mc_exceedance(&run).unwrap());
    assert_eq!(
        sample_corruption(&run).unwrap(),
        sample_corruption(&run).unwrap()
    );
}
