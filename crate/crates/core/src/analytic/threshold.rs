//! Security thresholds of the static model.

use serde::{Deserialize, Serialize};

use super::growth::{effective_adversarial_rate, honest_growth_rate};
use super::params::check_delay;
use super::root::bisect;
use crate::error::{Error, Result};

/// Bisection tolerance on the static root.
pub const STATIC_X_TOL: f64 = 1e-13;
/// Residual bound on the static boundary function at the returned root.
pub const STATIC_RESIDUAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdMethod {
    ClosedFormQuadratic,
    Bisection,
    LinearApprox,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdResult {
    pub beta_star: f64,
    pub method: ThresholdMethod,
    /// `|F(beta_star)|` for root-found values, zero for closed forms.
    pub residual: f64,
    /// Set when a formula value fell outside `[0, 1]` and was clamped.
    pub clamped: bool,
}

fn check_rate(lambda_total: f64) -> Result<()> {
    if lambda_total.is_finite() && lambda_total > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid("lambda_total", "must be finite and > 0"))
    }
}

/// Difference between the per-unit-rate adversarial and honest growth rates
/// at adversarial share `beta`. Strictly increasing in `beta`; negative
/// exactly where the honest chain wins.
pub fn static_boundary(beta: f64, lambda_total: f64, delta_honest: f64, delta_adv: f64) -> f64 {
    (effective_adversarial_rate(beta * lambda_total, delta_adv)
        - honest_growth_rate((1.0 - beta) * lambda_total, delta_honest))
        / lambda_total
}

/// The adversarial share at which both chains grow equally fast.
pub fn static_threshold_exact(
    lambda_total: f64,
    delta_honest: f64,
    delta_adv: f64,
) -> Result<ThresholdResult> {
    check_rate(lambda_total)?;
    check_delay("delta_honest", delta_honest)?;
    check_delay("delta_adv", delta_adv)?;

    // F(0) = -1/(1 + lambda*delta) < 0 and F(1) = 1/(1 + lambda*delta_adv) > 0.
    let root = bisect(
        |b| static_boundary(b, lambda_total, delta_honest, delta_adv),
        0.0,
        1.0,
        STATIC_X_TOL,
        STATIC_RESIDUAL_TOL,
    )
    .ok_or(Error::NoRootInUnitInterval { lo: 0.0, hi: 1.0 })?;
    Ok(ThresholdResult {
        beta_star: root.x,
        method: ThresholdMethod::Bisection,
        residual: root.residual,
        clamped: false,
    })
}

/// First-order threshold `1/2 + lambda (delta_adv - delta) / 4`, clamped to
/// `[0, 1]`.
pub fn static_threshold_approx(
    lambda_total: f64,
    delta_honest: f64,
    delta_adv: f64,
) -> Result<ThresholdResult> {
    check_rate(lambda_total)?;
    check_delay("delta_honest", delta_honest)?;
    check_delay("delta_adv", delta_adv)?;

    let raw = 0.5 + lambda_total * (delta_adv - delta_honest) / 4.0;
    let beta_star = raw.clamp(0.0, 1.0);
    Ok(ThresholdResult {
        beta_star,
        method: ThresholdMethod::LinearApprox,
        residual: 0.0,
        clamped: beta_star != raw,
    })
}
