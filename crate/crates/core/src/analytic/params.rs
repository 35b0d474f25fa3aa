//! Parameter sets for the static and dynamic delay models.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rates and delays of the static model.
///
/// `beta` is the adversary's share of the total block rate; `delta_honest`
/// bounds propagation between honest nodes and `delta_adv` bounds block
/// synchronization inside the adversary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StaticParams {
    pub lambda_total: f64,
    pub beta: f64,
    pub delta_honest: f64,
    pub delta_adv: f64,
}

impl StaticParams {
    pub fn new(lambda_total: f64, beta: f64, delta_honest: f64, delta_adv: f64) -> Result<Self> {
        let p = StaticParams {
            lambda_total,
            beta,
            delta_honest,
            delta_adv,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda_total.is_finite() && self.lambda_total > 0.0) {
            return Err(Error::invalid("lambda_total", "must be finite and > 0"));
        }
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(Error::invalid("beta", "must lie in [0, 1]"));
        }
        check_delay("delta_honest", self.delta_honest)?;
        check_delay("delta_adv", self.delta_adv)?;
        Ok(())
    }

    /// Adversarial block rate `beta * lambda`.
    pub fn lambda_adv(&self) -> f64 {
        self.beta * self.lambda_total
    }

    /// Honest block rate, computed as the remainder so the two rates sum to
    /// `lambda_total` without rounding drift.
    pub fn lambda_honest(&self) -> f64 {
        self.lambda_total - self.lambda_adv()
    }
}

pub(crate) fn check_delay(name: &'static str, d: f64) -> Result<()> {
    if d.is_finite() && d >= 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, "must be finite and >= 0"))
    }
}

/// Scale-dependent parameters of the dynamic model.
///
/// The two topology constants that share a symbol in the literature are kept
/// apart: `sync_c` scales the adversary's internal synchronization delay and
/// `corr_c` scales the per-validator corruption probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynamicParams {
    /// All nodes, validators plus zero-power relays.
    pub n_total: u64,
    pub n_val: u64,
    /// Coefficient `a` in `Delta(n) = a ln n`, seconds.
    pub delay_coeff: f64,
    /// Exponent rate of the adversary's reception speed-up `e^{-k beta}`.
    pub topo_k: f64,
    /// Coefficient of `ln(1 + beta n)` in the internal sync delay, seconds.
    pub sync_c: f64,
    /// Coefficient of `1/sqrt(n_val)` in the corruption probability.
    pub corr_c: f64,
    pub lambda_total: f64,
}

impl DynamicParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_val < 1 {
            return Err(Error::invalid("n_val", "must be >= 1"));
        }
        if self.n_total < self.n_val {
            return Err(Error::invalid("n_total", "must be >= n_val"));
        }
        for (name, v) in [
            ("delay_coeff", self.delay_coeff),
            ("topo_k", self.topo_k),
            ("sync_c", self.sync_c),
            ("corr_c", self.corr_c),
            ("lambda_total", self.lambda_total),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(name, "must be finite and > 0"));
            }
        }
        if self.corr_c / (self.n_val as f64).sqrt() >= 1.0 {
            return Err(Error::invalid(
                "corr_c",
                format!(
                    "corruption probability corr_c/sqrt(n_val) = {} must be < 1",
                    self.corr_c / (self.n_val as f64).sqrt()
                ),
            ));
        }
        Ok(())
    }

    /// Number of zero-power relay nodes.
    pub fn n_zero_power(&self) -> u64 {
        self.n_total - self.n_val
    }

    /// Copy with both node counts set to `n` (no relay nodes).
    pub fn with_scale(&self, n: u64) -> Self {
        DynamicParams {
            n_total: n,
            n_val: n,
            ..*self
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dynamic() -> DynamicParams {
        DynamicParams {
            n_total: 1000,
            n_val: 800,
            delay_coeff: 0.05,
            topo_k: 1.0,
            sync_c: 0.1,
            corr_c: 1.0,
            lambda_total: 1.0,
        }
    }

    #[test]
    fn rates_partition_total() {
        let p = StaticParams::new(10.0, 0.3, 0.4, 0.4).unwrap();
        assert_eq!(p.lambda_adv() + p.lambda_honest(), p.lambda_total);
    }

    #[test]
    fn static_rejects_bad_fields() {
        assert!(StaticParams::new(0.0, 0.3, 0.4, 0.4).is_err());
        assert!(StaticParams::new(1.0, 1.1, 0.4, 0.4).is_err());
        assert!(StaticParams::new(1.0, 0.3, -0.1, 0.4).is_err());
        assert!(StaticParams::new(1.0, 0.3, 0.4, f64::NAN).is_err());
    }

    #[test]
    fn dynamic_accepts_valid() {
        let p = dynamic();
        p.validate().unwrap();
        assert_eq!(p.n_zero_power(), 200);
    }

    #[test]
    fn dynamic_rejects_zero_delay_coeff() {
        let p = DynamicParams {
            delay_coeff: 0.0,
            ..dynamic()
        };
        assert!(matches!(
            p.validate(),
            Err(Error::InvalidParam {
                name: "delay_coeff",
                ..
            })
        ));
    }

    #[test]
    fn dynamic_rejects_more_validators_than_nodes() {
        let p = DynamicParams {
            n_val: 2000,
            ..dynamic()
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn dynamic_rejects_certain_corruption() {
        let p = DynamicParams {
            n_total: 4,
            n_val: 4,
            corr_c: 2.0,
            ..dynamic()
        };
        assert!(matches!(
            p.validate(),
            Err(Error::InvalidParam { name: "corr_c", .. })
        ));
    }
}
