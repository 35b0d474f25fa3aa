//! One function per subcommand. Each fills the defaults it relies on back
//! into the config, so the header echo is the complete resolved input.

use dualdelay_core::analytic::{
    dynamic_threshold_asymptotic, dynamic_threshold_exact, effective_adversarial_rate,
    exceedance_report, honest_delay, honest_growth_rate, normal_cdf, static_threshold_approx,
    static_threshold_exact, total_delay_window,
};
use dualdelay_core::corruption::{
    clt_convergence_sweep, mc_exceedance, wilson_interval, ThresholdRule,
};
use dualdelay_core::sim::growth::Z95;
use dualdelay_core::sim::{
    estimate_empirical_threshold, simulate_adversarial_growth, simulate_honest_growth,
    simulate_private_race,
};
use dualdelay_core::{AdvSyncMode, CorruptionRun, DynamicParams, SimConfig, StaticParams};
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{BetaRule, ModelSection, OneOrMany, RunConfig, Side};
use crate::error::{missing, CliError};
use crate::output::{Cell, Report, Table};

type Result<T> = std::result::Result<T, CliError>;

pub fn req<T: Copy>(v: Option<T>, key: &str) -> Result<T> {
    v.ok_or_else(|| missing(key))
}

fn dynamic_params(m: &ModelSection) -> Result<DynamicParams> {
    Ok(DynamicParams {
        n_total: req(m.n_total(), "n")?,
        n_val: req(m.n_val(), "n")?,
        delay_coeff: req(m.delay_coeff, "delay_coeff")?,
        topo_k: req(m.topo_k, "topo_k")?,
        sync_c: req(m.sync_c, "sync_c")?,
        corr_c: req(m.corr_c, "corr_c")?,
        lambda_total: req(m.lambda_total, "lambda_total")?,
    })
}

/// Resolves the simulation settings a command uses, writing defaults back.
fn sim_config(cfg: &mut RunConfig, seed: u64, trials: u64, horizon: f64) -> SimConfig {
    let base = SimConfig::default();
    let s = &mut cfg.sim;
    let trials = *s.trials.get_or_insert(trials);
    let horizon = *s.horizon.get_or_insert(horizon);
    let adv_sync_mode = *s.adv_sync_mode.get_or_insert(base.adv_sync_mode);
    s.base_seed = Some(seed);
    SimConfig {
        horizon,
        confirm_depth: base.confirm_depth,
        trials,
        base_seed: seed,
        adv_sync_mode,
    }
}

/// serde's snake_case spelling of an enum, the same one config files use.
fn name_of<T: Serialize>(v: T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn collect_rows(table: &mut Table, rows: Vec<Result<Vec<Cell>>>) -> Result<()> {
    for row in rows {
        table.push(row?);
    }
    Ok(())
}

pub fn threshold_static(cfg: &mut RunConfig) -> Result<Report> {
    let lambdas = match (&cfg.model.lambda_curves, cfg.model.lambda_total) {
        (Some(curves), _) => curves.clone(),
        (None, Some(l)) => vec![l],
        (None, None) => return Err(missing("lambda_total")),
    };
    let mut points = Vec::new();
    for lambda in lambdas {
        let base = ModelSection {
            lambda_total: Some(lambda),
            ..cfg.model.clone()
        };
        points.extend(cfg.model_points(&base)?);
    }
    let rows: Vec<Result<Vec<Cell>>> = points
        .par_iter()
        .map(|m| {
            let lambda = req(m.lambda_total, "lambda_total")?;
            let d = req(m.delta_honest, "delta_honest")?;
            let da = req(m.delta_adv, "delta_adv")?;
            let exact = static_threshold_exact(lambda, d, da)?;
            let approx = static_threshold_approx(lambda, d, da)?;
            Ok(vec![
                lambda.into(),
                d.into(),
                da.into(),
                exact.beta_star.into(),
                approx.beta_star.into(),
                approx.clamped.into(),
            ])
        })
        .collect();
    let mut table = Table::new(&[
        "lambda_total",
        "delta_honest",
        "delta_adv",
        "beta_star_exact",
        "beta_star_approx",
        "clamped",
    ]);
    collect_rows(&mut table, rows)?;
    Ok(Report {
        command: "threshold-static",
        table,
        notes: vec![],
    })
}

pub fn threshold_dynamic(cfg: &mut RunConfig) -> Result<Report> {
    let points = cfg.model_points(&cfg.model)?;
    let rows: Vec<Result<Vec<Cell>>> = points
        .par_iter()
        .map(|m| {
            let params = dynamic_params(m)?;
            let exact = dynamic_threshold_exact(&params)?;
            let asym = dynamic_threshold_asymptotic(&params)?;
            let w = total_delay_window(&params, exact.beta_star)?;
            Ok(vec![
                params.n_total.into(),
                params.n_val.into(),
                w.delta_n.into(),
                w.delta_reception.into(),
                w.delta_internal.into(),
                w.delta_total.into(),
                exact.beta_star.into(),
                asym.beta_star.into(),
                exact.residual.into(),
            ])
        })
        .collect();
    let mut table = Table::new(&[
        "n_total",
        "n_val",
        "delta_n",
        "delta_reception",
        "delta_internal",
        "delta_total",
        "beta_star_exact",
        "beta_star_asymptotic",
        "residual",
    ]);
    collect_rows(&mut table, rows)?;
    Ok(Report {
        command: "threshold-dynamic",
        table,
        notes: vec![],
    })
}

/// One row of the security curve.
#[derive(Debug, Clone, Copy)]
struct SecurityPoint {
    n_total: u64,
    n_val: u64,
    delta_n: f64,
    p_star: f64,
    beta_star: f64,
    z_n: f64,
    pr_secure: f64,
    pr_exceed_gaussian: f64,
    pr_exceed_exact: f64,
    exact_is_gaussian: bool,
}

fn security_point(m: &ModelSection, rule: BetaRule) -> Result<SecurityPoint> {
    let params = dynamic_params(m)?;
    params.validate()?;
    let beta_star = match rule {
        BetaRule::Asymptotic => dynamic_threshold_asymptotic(&params)?.beta_star,
        BetaRule::Exact => dynamic_threshold_exact(&params)?.beta_star,
        BetaRule::Constant => req(m.beta_star, "beta_star")?,
    };
    let p_star = dualdelay_core::analytic::corruption_probability(&params)?;
    let r = exceedance_report(params.n_val, beta_star, p_star)?;
    Ok(SecurityPoint {
        n_total: params.n_total,
        n_val: params.n_val,
        delta_n: honest_delay(params.n_total as f64, params.delay_coeff)?,
        p_star,
        beta_star,
        z_n: r.z_n,
        pr_secure: normal_cdf(r.z_n),
        pr_exceed_gaussian: r.pr_exceed_gaussian,
        pr_exceed_exact: r.pr_exceed_exact,
        exact_is_gaussian: r.exact_is_gaussian,
    })
}

fn security_curve(points: &[ModelSection], rule: BetaRule) -> Result<Vec<SecurityPoint>> {
    points.par_iter().map(|m| security_point(m, rule)).collect()
}

/// Constants searched by `security-prob --explore`.
pub const EXPLORE_CORR_C: &[f64] = &[0.25, 0.5, 1.0, 2.0, 4.0, 8.0];
pub const EXPLORE_SYNC_C: &[f64] = &[0.01, 0.03, 0.1, 0.3, 1.0];
pub const EXPLORE_DELAY_COEFF: &[f64] = &[0.01, 0.05, 0.2, 1.0];
/// Smallest drop and rise that count as a dip.
const DIP_TOL: f64 = 1e-9;

/// Index of an interior minimum that lies strictly below both ends.
pub fn dip_then_rise(curve: &[f64]) -> Option<usize> {
    if curve.len() < 3 {
        return None;
    }
    let (argmin, &min) = curve.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1))?;
    let last = curve.len() - 1;
    (argmin > 0 && argmin < last && curve[0] - min > DIP_TOL && curve[last] - min > DIP_TOL)
        .then_some(argmin)
}

pub fn security_prob(cfg: &mut RunConfig, explore: bool) -> Result<Report> {
    let mut notes = Vec::new();
    let mut rule = *cfg.model.beta_rule.get_or_insert(BetaRule::Asymptotic);
    let mut model = cfg.model.clone();

    if explore {
        rule = BetaRule::Exact;
        cfg.model.beta_rule = Some(rule);
        let mut tried = 0usize;
        let mut skipped = 0usize;
        let mut found = None;
        'search: for &corr_c in EXPLORE_CORR_C {
            for &sync_c in EXPLORE_SYNC_C {
                for &delay_coeff in EXPLORE_DELAY_COEFF {
                    tried += 1;
                    let candidate = ModelSection {
                        corr_c: Some(corr_c),
                        sync_c: Some(sync_c),
                        delay_coeff: Some(delay_coeff),
                        ..cfg.model.clone()
                    };
                    let Ok(curve) = security_curve(&cfg.model_points(&candidate)?, rule) else {
                        skipped += 1;
                        continue;
                    };
                    let pr: Vec<f64> = curve.iter().map(|p| p.pr_secure).collect();
                    if let Some(i) = dip_then_rise(&pr) {
                        found = Some((candidate, curve[i].n_val, pr[i]));
                        break 'search;
                    }
                }
            }
        }
        notes.push(format!(
            "explore: searched {tried} (corr_c, sync_c, delay_coeff) combinations with the exact \
             threshold rule, {skipped} outside the model domain"
        ));
        match found {
            Some((candidate, n_min, pr_min)) => {
                notes.push(format!(
                    "explore: dip_then_rise=true corr_c={} sync_c={} delay_coeff={} \
                     min_pr_secure={} at n={}",
                    candidate.corr_c.unwrap_or_default(),
                    candidate.sync_c.unwrap_or_default(),
                    candidate.delay_coeff.unwrap_or_default(),
                    pr_min,
                    n_min
                ));
                model = candidate;
            }
            None => notes.push(
                "explore: dip_then_rise=false; no searched constants give a decreasing then \
                 increasing pr_secure curve on this grid; rows use the configured constants"
                    .into(),
            ),
        }
    }

    let curve = security_curve(&cfg.model_points(&model)?, rule)?;
    let mut table = Table::new(&[
        "n_total",
        "n_val",
        "delta_n",
        "p_star",
        "beta_star",
        "z_n",
        "pr_secure",
        "pr_exceed_gaussian",
        "pr_exceed_exact",
        "exact_is_gaussian",
    ]);
    for p in curve {
        table.push(vec![
            p.n_total.into(),
            p.n_val.into(),
            p.delta_n.into(),
            p.p_star.into(),
            p.beta_star.into(),
            p.z_n.into(),
            p.pr_secure.into(),
            p.pr_exceed_gaussian.into(),
            p.pr_exceed_exact.into(),
            p.exact_is_gaussian.into(),
        ]);
    }
    Ok(Report {
        command: if explore {
            "security-prob --explore"
        } else {
            "security-prob"
        },
        table,
        notes,
    })
}

/// Rate parameter of one chain: the explicit per-side rate, else the share
/// of the total rate implied by `beta`.
fn side_rate(m: &ModelSection, side: Side) -> Result<f64> {
    let (explicit, key) = match side {
        Side::Honest => (m.lambda_h, "lambda_h"),
        Side::Adversarial => (m.lambda_a, "lambda_a"),
    };
    if let Some(r) = explicit {
        return Ok(r);
    }
    match (m.lambda_total, m.beta) {
        (Some(l), Some(b)) => Ok(match side {
            Side::Honest => (1.0 - b) * l,
            Side::Adversarial => b * l,
        }),
        _ => Err(missing(key)),
    }
}

pub fn simulate_growth(cfg: &mut RunConfig, seed: u64) -> Result<Report> {
    let side = req(cfg.sim.side, "side").map_err(|_| {
        CliError::Config("simulate growth needs `sim.side` (honest or adversarial)".into())
    })?;
    let sim = sim_config(cfg, seed, 1, 1e6);
    let mut table = Table::new(&[
        "side",
        "mode",
        "rate",
        "delay",
        "horizon",
        "trials",
        "block_count",
        "empirical_rate",
        "ci_halfwidth",
        "oracle_rate",
    ]);
    for m in cfg.model_points(&cfg.model)? {
        let rate = side_rate(&m, side)?;
        let (delay, est, mode, oracle) = match side {
            Side::Honest => {
                let d = req(m.delta_honest, "delta_honest")?;
                let est = simulate_honest_growth(rate, d, &sim)?;
                (d, est, "renewal".to_owned(), honest_growth_rate(rate, d))
            }
            Side::Adversarial => {
                let d = req(m.delta_adv, "delta_adv")?;
                let est = simulate_adversarial_growth(rate, d, &sim)?;
                let oracle = match sim.adv_sync_mode {
                    AdvSyncMode::SerialSync => effective_adversarial_rate(rate, d),
                    // A stable queue's departures keep pace with arrivals.
                    AdvSyncMode::PipelinedQueue => rate,
                };
                (d, est, name_of(sim.adv_sync_mode), oracle)
            }
        };
        table.push(vec![
            name_of(side).as_str().into(),
            mode.as_str().into(),
            rate.into(),
            delay.into(),
            sim.horizon.into(),
            sim.trials.into(),
            est.block_count.into(),
            est.empirical_rate.into(),
            est.ci_halfwidth.into(),
            oracle.into(),
        ]);
    }
    Ok(Report {
        command: "simulate growth",
        table,
        notes: vec![],
    })
}

pub fn simulate_race(cfg: &mut RunConfig, seed: u64) -> Result<Report> {
    let mut sim = sim_config(cfg, seed, 100_000, SimConfig::default().horizon);
    let depths = cfg
        .sim
        .confirm_depth
        .get_or_insert(OneOrMany::One(sim.confirm_depth))
        .values();
    let mut table = Table::new(&[
        "beta",
        "lambda_total",
        "delta_honest",
        "delta_adv",
        "confirm_depth",
        "mode",
        "trials",
        "success_count",
        "success_prob",
        "ci_low",
        "ci_high",
        "mean_honest_len",
        "mean_adv_len",
    ]);
    for m in cfg.model_points(&cfg.model)? {
        let params = StaticParams::new(
            req(m.lambda_total, "lambda_total")?,
            req(m.beta, "beta")?,
            req(m.delta_honest, "delta_honest")?,
            req(m.delta_adv, "delta_adv")?,
        )?;
        for &depth in &depths {
            sim.confirm_depth = depth;
            let r = simulate_private_race(&params, &sim)?;
            let (lo, hi) = wilson_interval(r.success_count, r.trials, Z95);
            table.push(vec![
                params.beta.into(),
                params.lambda_total.into(),
                params.delta_honest.into(),
                params.delta_adv.into(),
                depth.into(),
                name_of(sim.adv_sync_mode).as_str().into(),
                r.trials.into(),
                r.success_count.into(),
                r.success_prob.into(),
                lo.into(),
                hi.into(),
                r.mean_honest_len.into(),
                r.mean_adv_len.into(),
            ]);
        }
    }
    Ok(Report {
        command: "simulate race",
        table,
        notes: vec![],
    })
}

pub fn simulate_threshold(cfg: &mut RunConfig, seed: u64) -> Result<Report> {
    let sim = sim_config(cfg, seed, 1, 1e6);
    let mut table = Table::new(&[
        "lambda_total",
        "delta_honest",
        "delta_adv",
        "beta_hat",
        "bracket_lo",
        "bracket_hi",
        "steps",
        "beta_star_exact",
    ]);
    for m in cfg.model_points(&cfg.model)? {
        let lambda = req(m.lambda_total, "lambda_total")?;
        let d = req(m.delta_honest, "delta_honest")?;
        let da = req(m.delta_adv, "delta_adv")?;
        let est = estimate_empirical_threshold(lambda, d, da, &sim)?;
        let exact = static_threshold_exact(lambda, d, da)?;
        table.push(vec![
            lambda.into(),
            d.into(),
            da.into(),
            est.beta_hat.into(),
            est.lo.into(),
            est.hi.into(),
            est.steps.into(),
            exact.beta_star.into(),
        ]);
    }
    Ok(Report {
        command: "simulate threshold",
        table,
        notes: vec![],
    })
}

pub fn corruption_mc(cfg: &mut RunConfig, seed: u64) -> Result<Report> {
    let sim = sim_config(cfg, seed, 100_000, SimConfig::default().horizon);
    let mut table = Table::new(&[
        "n_val",
        "p",
        "beta_star",
        "trials",
        "exceed_count",
        "mc_estimate",
        "ci_low",
        "ci_high",
        "exact",
        "gaussian",
    ]);
    for m in cfg.model_points(&cfg.model)? {
        let n_val = req(m.n_val(), "n_val")?;
        let p = match (m.p, m.corr_c) {
            (Some(p), _) => p,
            (None, Some(c)) => {
                dualdelay_core::analytic::dynamic::corruption_probability_at(c, n_val)?
            }
            (None, None) => return Err(missing("p")),
        };
        let run = CorruptionRun {
            n_val,
            p,
            trials: sim.trials,
            base_seed: seed,
            beta_star: req(m.beta_star, "beta_star")?,
        };
        let e = mc_exceedance(&run)?;
        table.push(vec![
            n_val.into(),
            p.into(),
            run.beta_star.into(),
            e.trials.into(),
            e.exceed_count.into(),
            e.mc_estimate.into(),
            e.ci_low.into(),
            e.ci_high.into(),
            e.exact.into(),
            e.gaussian.into(),
        ]);
    }
    Ok(Report {
        command: "corruption mc",
        table,
        notes: vec![],
    })
}

pub fn corruption_sweep(cfg: &mut RunConfig, seed: u64) -> Result<Report> {
    let sim = sim_config(cfg, seed, 100_000, SimConfig::default().horizon);
    let points = cfg.model_points(&cfg.model)?;
    let grid = points
        .iter()
        .map(|m| req(m.n_val(), "n_val"))
        .collect::<Result<Vec<u64>>>()?;
    let beta_rule = *cfg.model.beta_rule.get_or_insert(BetaRule::Asymptotic);
    let m = &cfg.model;
    let corr_c = req(m.corr_c, "corr_c")?;
    let rule = match beta_rule {
        BetaRule::Asymptotic => ThresholdRule::Asymptotic {
            lambda_total: req(m.lambda_total, "lambda_total")?,
            sync_c: req(m.sync_c, "sync_c")?,
        },
        BetaRule::Exact => {
            let first = ModelSection {
                n: grid.first().copied(),
                n_total: None,
                n_val: None,
                ..m.clone()
            };
            ThresholdRule::Exact {
                template: dynamic_params(&first)?,
            }
        }
        BetaRule::Constant => ThresholdRule::Constant {
            beta_star: req(m.beta_star, "beta_star")?,
        },
    };
    let rows = clt_convergence_sweep(corr_c, &grid, &rule, sim.trials, seed)?;
    let mut table = Table::new(&[
        "n_val",
        "p_star",
        "beta_star",
        "trials",
        "mc_estimate",
        "ci_low",
        "ci_high",
        "exact",
        "gaussian",
        "gap",
    ]);
    for r in rows {
        table.push(vec![
            r.n_val.into(),
            r.p_star.into(),
            r.beta_star.into(),
            r.estimate.trials.into(),
            r.estimate.mc_estimate.into(),
            r.estimate.ci_low.into(),
            r.estimate.ci_high.into(),
            r.estimate.exact.into(),
            r.estimate.gaussian.into(),
            r.gap().into(),
        ]);
    }
    Ok(Report {
        command: "corruption sweep",
        table,
        notes: vec![],
    })
}
