use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the adversary's private chain absorbs its synchronization delay.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdvSyncMode {
    /// A block can only be mined on top of a fully synchronized predecessor:
    /// inter-block time is `Exp(lambda_a) + delta_adv`.
    #[default]
    SerialSync,
    /// Blocks are mined as a Poisson stream and synchronized one at a time in
    /// FIFO order with fixed service time (a literal M/D/1 queue).
    PipelinedQueue,
}

impl std::str::FromStr for AdvSyncMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "serial_sync" => Ok(AdvSyncMode::SerialSync),
            "pipelined_queue" => Ok(AdvSyncMode::PipelinedQueue),
            other => Err(Error::invalid(
                "adv_sync_mode",
                format!("unknown mode `{other}`, expected serial_sync or pipelined_queue"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    /// Simulated seconds per growth trial.
    pub horizon: f64,
    /// Honest depth at which a race is decided.
    pub confirm_depth: u32,
    pub trials: u64,
    pub base_seed: u64,
    pub adv_sync_mode: AdvSyncMode,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            horizon: 1e6,
            confirm_depth: 6,
            trials: 100_000,
            base_seed: 0,
            adv_sync_mode: AdvSyncMode::SerialSync,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return Err(Error::invalid("horizon", "must be finite and > 0"));
        }
        if self.trials < 1 {
            return Err(Error::invalid("trials", "must be >= 1"));
        }
        if self.confirm_depth < 1 {
            return Err(Error::invalid("confirm_depth", "must be >= 1"));
        }
        Ok(())
    }
}
