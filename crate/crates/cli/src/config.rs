//! Run configuration: a JSON file with `model`, `sim`, `sweep` and `output`
//! sections, layered as defaults < preset < config file < command-line flags.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use dualdelay_core::AdvSyncMode;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Model keys a sweep may range over.
pub const AXIS_KEYS: &[&str] = &[
    "lambda_total",
    "beta",
    "delta_honest",
    "delta_adv",
    "lambda_h",
    "lambda_a",
    "n",
    "n_total",
    "n_val",
    "delay_coeff",
    "topo_k",
    "sync_c",
    "corr_c",
    "p",
    "beta_star",
];

/// Largest number of points a min/max/step sweep may expand to.
const MAX_SWEEP_POINTS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Fig1,
    Fig2,
    Clt,
}

/// Threshold used by `security-prob` and `corruption sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum BetaRule {
    Asymptotic,
    Exact,
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Honest,
    Adversarial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    Linear,
    Log10,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_total: Option<f64>,
    /// One output curve per listed total rate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_curves: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_honest: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_adv: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_h: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_a: Option<f64>,
    /// Shorthand for `n_total = n_val = n`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_total: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_val: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delay_coeff: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topo_k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sync_c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corr_c: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_star: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_rule: Option<BetaRule>,
}

macro_rules! overlay_fields {
    ($low:expr, $high:expr; $($f:ident),*) => {
        $( if $high.$f.is_some() { $low.$f = $high.$f.clone(); } )*
    };
}

impl ModelSection {
    fn overlay(&mut self, high: &ModelSection) {
        overlay_fields!(self, high; lambda_total, lambda_curves, beta, delta_honest, delta_adv,
            lambda_h, lambda_a, n, n_total, n_val, delay_coeff, topo_k, sync_c, corr_c, p,
            beta_star, beta_rule);
    }

    /// Sets the sweep axis `key` to `value`.
    pub fn set(&mut self, key: &str, value: f64) -> Result<(), CliError> {
        let count = || -> Result<Option<u64>, CliError> {
            if !(value.is_finite() && value >= 0.0) {
                return Err(CliError::Config(format!(
                    "sweep value {value} for `{key}` is not a valid count"
                )));
            }
            Ok(Some(value.round() as u64))
        };
        match key {
            "lambda_total" => self.lambda_total = Some(value),
            "beta" => self.beta = Some(value),
            "delta_honest" => self.delta_honest = Some(value),
            "delta_adv" => self.delta_adv = Some(value),
            "lambda_h" => self.lambda_h = Some(value),
            "lambda_a" => self.lambda_a = Some(value),
            "n" => {
                self.n = count()?;
                self.n_total = None;
                self.n_val = None;
            }
            "n_total" => self.n_total = count()?,
            "n_val" => self.n_val = count()?,
            "delay_coeff" => self.delay_coeff = Some(value),
            "topo_k" => self.topo_k = Some(value),
            "sync_c" => self.sync_c = Some(value),
            "corr_c" => self.corr_c = Some(value),
            "p" => self.p = Some(value),
            "beta_star" => self.beta_star = Some(value),
            other => return Err(unknown_axis(other)),
        }
        Ok(())
    }

    pub fn n_total(&self) -> Option<u64> {
        self.n_total.or(self.n)
    }

    pub fn n_val(&self) -> Option<u64> {
        self.n_val.or(self.n)
    }
}

fn unknown_axis(axis: &str) -> CliError {
    CliError::Config(format!(
        "sweep axis `{axis}` is not a model key (expected one of: {})",
        AXIS_KEYS.join(", ")
    ))
}

/// A single integer or a list, so `confirm_depth` can drive several races.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OneOrMany {
    One(u32),
    Many(Vec<u32>),
}

impl OneOrMany {
    pub fn values(&self) -> Vec<u32> {
        match self {
            OneOrMany::One(v) => vec![*v],
            OneOrMany::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub confirm_depth: Option<OneOrMany>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub adv_sync_mode: Option<AdvSyncMode>,
    /// Which chain `simulate growth` runs.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
}

impl SimSection {
    fn overlay(&mut self, high: &SimSection) {
        overlay_fields!(self, high; horizon, confirm_depth, trials, base_seed, adv_sync_mode,
            side);
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<String>,
    /// Explicit axis values, taken as given (no scaling).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
    /// With `log10`, the range `min..=max` is in exponents.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<Scale>,
}

impl SweepSection {
    pub fn is_empty(&self) -> bool {
        *self == SweepSection::default()
    }

    fn overlay(&mut self, high: &SweepSection) {
        // A range replaces a list from a lower layer and vice versa.
        if high.values.is_some() {
            self.min = None;
            self.max = None;
            self.step = None;
        }
        if high.min.is_some() || high.max.is_some() || high.step.is_some() {
            self.values = None;
        }
        overlay_fields!(self, high; axis, values, min, max, step, scale);
    }

    /// Axis values in sweep order.
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        if let Some(values) = &self.values {
            if values.is_empty() {
                return Err(CliError::Config("sweep.values must not be empty".into()));
            }
            return Ok(values.clone());
        }
        let (Some(min), Some(max), Some(step)) = (self.min, self.max, self.step) else {
            return Err(CliError::Config(
                "sweep needs either `values` or all of `min`, `max`, `step`".into(),
            ));
        };
        if !(min.is_finite() && max.is_finite() && step.is_finite() && step > 0.0 && max >= min) {
            return Err(CliError::Config(
                "sweep range needs finite min <= max and step > 0".into(),
            ));
        }
        // Tolerance keeps `max` when (max - min) / step lands just under an integer.
        let last = ((max - min) / step + 1e-9).floor();
        if last >= MAX_SWEEP_POINTS as f64 {
            return Err(CliError::Config(format!(
                "sweep expands to more than {MAX_SWEEP_POINTS} points"
            )));
        }
        let log = self.scale == Some(Scale::Log10);
        Ok((0..=last as usize)
            .map(|i| {
                let x = min + i as f64 * step;
                if log {
                    10f64.powf(x)
                } else {
                    x
                }
            })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl OutputSection {
    fn overlay(&mut self, high: &OutputSection) {
        overlay_fields!(self, high; path, format);
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub model: ModelSection,
    #[serde(default)]
    pub sim: SimSection,
    #[serde(default, skip_serializing_if = "SweepSection::is_empty")]
    pub sweep: SweepSection,
    #[serde(default)]
    pub output: OutputSection,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text)
            .map_err(|e| CliError::Config(format!("{}: {}", path.display(), e.message())))
    }

    /// Applies `high` on top of `self`, key by key.
    pub fn overlay(&mut self, high: &RunConfig) {
        self.model.overlay(&high.model);
        self.sim.overlay(&high.sim);
        self.sweep.overlay(&high.sweep);
        self.output.overlay(&high.output);
    }

    pub fn check(&self) -> Result<(), CliError> {
        if !self.sweep.is_empty() {
            match self.sweep.axis.as_deref() {
                None => return Err(CliError::Config("sweep.axis is required".into())),
                Some(axis) if !AXIS_KEYS.contains(&axis) => return Err(unknown_axis(axis)),
                Some(_) => {}
            }
        }
        Ok(())
    }

    /// Model sections at every sweep point, in axis order; just the model
    /// itself when no sweep is configured.
    pub fn model_points(&self, base: &ModelSection) -> Result<Vec<ModelSection>, CliError> {
        let Some(axis) = self.sweep.axis.as_deref() else {
            return Ok(vec![base.clone()]);
        };
        self.sweep
            .points()?
            .into_iter()
            .map(|v| {
                let mut m = base.clone();
                m.set(axis, v)?;
                Ok(m)
            })
            .collect()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

/// Parameters a preset bakes in.
pub fn preset(p: Preset) -> RunConfig {
    match p {
        Preset::Fig1 => RunConfig {
            model: ModelSection {
                delta_honest: Some(0.4),
                lambda_curves: Some(vec![5.0, 10.0, 20.0]),
                ..Default::default()
            },
            sweep: SweepSection {
                axis: Some("delta_adv".into()),
                min: Some(0.0),
                max: Some(2.0),
                step: Some(0.02),
                scale: Some(Scale::Linear),
                values: None,
            },
            ..Default::default()
        },
        // Illustrative constants: the figure's caption states none.
        Preset::Fig2 => RunConfig {
            model: ModelSection {
                lambda_total: Some(10.0),
                delay_coeff: Some(0.05),
                topo_k: Some(1.0),
                sync_c: Some(0.1),
                corr_c: Some(1.0),
                beta_rule: Some(BetaRule::Asymptotic),
                ..Default::default()
            },
            sweep: SweepSection {
                axis: Some("n".into()),
                min: Some(2.0),
                max: Some(12.0),
                step: Some(1.0),
                scale: Some(Scale::Log10),
                values: None,
            },
            ..Default::default()
        },
        Preset::Clt => RunConfig {
            model: ModelSection {
                lambda_total: Some(1.0),
                sync_c: Some(1.0),
                corr_c: Some(1.0),
                beta_rule: Some(BetaRule::Asymptotic),
                ..Default::default()
            },
            sweep: SweepSection {
                axis: Some("n".into()),
                values: Some(vec![100.0, 1000.0, 10000.0]),
                ..Default::default()
            },
            ..Default::default()
        },
    }
}

pub fn preset_note(p: Preset) -> Option<&'static str> {
    match p {
        Preset::Fig2 => Some(
            "fig2 preset constants (corr_c, sync_c, lambda_total, delay_coeff, topo_k) are \
             illustrative choices, not values taken from the figure",
        ),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_key_is_named() {
        let err = RunConfig::from_json(r#"{"model": {"lambda": 5}}"#).unwrap_err();
        assert!(err.message().contains("`lambda`"), "{}", err.message());
        let err = RunConfig::from_json(r#"{"extra": {}}"#).unwrap_err();
        assert!(err.message().contains("`extra`"));
    }

    #[test]
    fn bad_axis_rejected() {
        let cfg = RunConfig::from_json(r#"{"sweep": {"axis": "trials", "values": [1]}}"#).unwrap();
        let err = cfg.check().unwrap_err();
        assert!(err.message().contains("`trials`"));
    }

    #[test]
    fn fig1_grid_has_101_points_and_hits_symmetric_delay() {
        let pts = preset(Preset::Fig1).sweep.points().unwrap();
        assert_eq!(pts.len(), 101);
        assert_eq!(pts[20], 0.4);
        assert_eq!(*pts.last().unwrap(), 2.0);
    }

    #[test]
    fn log_grid_rounds_to_powers_of_ten() {
        let cfg = preset(Preset::Fig2);
        let pts = cfg.model_points(&cfg.model).unwrap();
        let ns: Vec<u64> = pts.iter().map(|m| m.n_val().unwrap()).collect();
        assert_eq!(ns.len(), 11);
        assert_eq!(ns[0], 100);
        assert_eq!(ns[10], 1_000_000_000_000);
    }

    #[test]
    fn higher_layer_wins_and_range_replaces_list() {
        let mut low = preset(Preset::Clt);
        let high = RunConfig::from_json(
            r#"{"model": {"corr_c": 2}, "sweep": {"min": 2, "max": 3, "step": 1, "scale": "log10"}}"#,
        )
        .unwrap();
        low.overlay(&high);
        assert_eq!(low.model.corr_c, Some(2.0));
        assert_eq!(low.model.sync_c, Some(1.0));
        assert_eq!(low.sweep.points().unwrap(), vec![100.0, 1000.0]);
    }

    #[test]
    fn resolved_config_round_trips() {
        let mut cfg = preset(Preset::Fig2);
        cfg.sim.base_seed = Some(7);
        cfg.sim.confirm_depth = Some(OneOrMany::Many(vec![1, 3]));
        let back = RunConfig::from_json(&cfg.to_json_line()).unwrap();
        assert_eq!(back, cfg);
    }
}
