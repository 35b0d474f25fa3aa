//! Scale-dependent delays and thresholds of the dynamic model.
//!
//! Logarithms are natural throughout; a different base is absorbed by the
//! `delay_coeff` and `sync_c` coefficients.

use serde::{Deserialize, Serialize};

use super::params::DynamicParams;
use super::root::bisect;
use super::threshold::{ThresholdMethod, ThresholdResult};
use crate::error::{Error, Result};

pub const DYNAMIC_X_TOL: f64 = 1e-12;
pub const DYNAMIC_RESIDUAL_TOL: f64 = 1e-10;
/// Margin kept from the ends of the unit interval when bracketing.
pub const BRACKET_EPS: f64 = 1e-12;

/// Honest propagation delay `delay_coeff * ln n`.
///
/// `n` is real-valued so the function can be evaluated off the integers.
pub fn honest_delay(n: f64, delay_coeff: f64) -> Result<f64> {
    if !(n >= 2.0 && n.is_finite()) {
        return Err(Error::Domain(format!("honest delay needs n >= 2, got {n}")));
    }
    Ok(delay_coeff * n.ln())
}

/// Components of the adversary's total delay window at a given share.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelayWindow {
    /// Honest delay `Delta(n)` the window is measured against.
    pub delta_n: f64,
    /// Delay in receiving honest blocks, `Delta(n) e^{-k beta}`.
    pub delta_reception: f64,
    /// Internal synchronization delay, `sync_c ln(1 + beta n)`.
    pub delta_internal: f64,
    pub delta_total: f64,
}

impl DelayWindow {
    pub fn compute(n: f64, delay_coeff: f64, topo_k: f64, sync_c: f64, beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::Domain(format!(
                "beta must lie in [0, 1], got {beta}"
            )));
        }
        let delta_n = honest_delay(n, delay_coeff)?;
        let delta_reception = delta_n * (-topo_k * beta).exp();
        let delta_internal = sync_c * (beta * n).ln_1p();
        Ok(DelayWindow {
            delta_n,
            delta_reception,
            delta_internal,
            delta_total: delta_reception + delta_internal,
        })
    }
}

/// Delay window of `params` at adversarial share `beta`, with delays scaled by
/// the total node count.
pub fn total_delay_window(params: &DynamicParams, beta: f64) -> Result<DelayWindow> {
    DelayWindow::compute(
        params.n_total as f64,
        params.delay_coeff,
        params.topo_k,
        params.sync_c,
        beta,
    )
}

/// Leading-order threshold `1 / (2 + lambda sync_c ln n)`.
pub fn dynamic_threshold_asymptotic(params: &DynamicParams) -> Result<ThresholdResult> {
    let n = params.n_total as f64;
    if n < 2.0 {
        return Err(Error::Domain(format!("n_total must be >= 2, got {n}")));
    }
    Ok(ThresholdResult {
        beta_star: asymptotic_threshold(n, params.lambda_total, params.sync_c),
        method: ThresholdMethod::Asymptotic,
        residual: 0.0,
        clamped: false,
    })
}

pub(crate) fn asymptotic_threshold(n: f64, lambda_total: f64, sync_c: f64) -> f64 {
    1.0 / (2.0 + lambda_total * sync_c * n.ln())
}

/// Boundary function of the dynamic model,
/// `(1 - 2 beta) - beta lambda (Delta_total(beta) - Delta(n))`.
///
/// Positive means secure. The orientation places the threshold below one half
/// whenever the adversary's window exceeds the honest delay.
pub fn dynamic_boundary(params: &DynamicParams, beta: f64) -> Result<f64> {
    let w = total_delay_window(params, beta)?;
    Ok((1.0 - 2.0 * beta) - beta * params.lambda_total * (w.delta_total - w.delta_n))
}

/// Root of [`dynamic_boundary`] in the open unit interval, by bisection.
pub fn dynamic_threshold_exact(params: &DynamicParams) -> Result<ThresholdResult> {
    if params.n_total < 2 {
        return Err(Error::Domain(format!(
            "n_total must be >= 2, got {}",
            params.n_total
        )));
    }
    // Validates n before the closure, which can then unwrap.
    total_delay_window(params, 0.0)?;
    let g = |b: f64| dynamic_boundary(params, b).expect("beta in unit interval");
    let (lo, hi) = (BRACKET_EPS, 1.0 - BRACKET_EPS);
    let root = bisect(g, lo, hi, DYNAMIC_X_TOL, DYNAMIC_RESIDUAL_TOL)
        .ok_or(Error::NoRootInUnitInterval { lo, hi })?;
    Ok(ThresholdResult {
        beta_star: root.x,
        method: ThresholdMethod::Bisection,
        residual: root.residual,
        clamped: false,
    })
}

/// Per-validator corruption probability `corr_c / sqrt(n_val)`.
pub fn corruption_probability(params: &DynamicParams) -> Result<f64> {
    corruption_probability_at(params.corr_c, params.n_val)
}

pub fn corruption_probability_at(corr_c: f64, n_val: u64) -> Result<f64> {
    if n_val == 0 {
        return Err(Error::Domain("n_val must be >= 1".into()));
    }
    let p = corr_c / (n_val as f64).sqrt();
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::Domain(format!(
            "corruption probability {p} must lie in (0, 1)"
        )));
    }
    Ok(p)
}
