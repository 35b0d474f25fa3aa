//! M/D/1 metrics of the adversary's block synchronization queue.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Steady-state metrics of an M/D/1 queue with arrival rate `lambda_a` and
/// deterministic service time `delta_adv`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QueueMetrics {
    /// Utilization `lambda_a * delta_adv`.
    pub rho: f64,
    /// Mean wait before service (Pollaczek-Khinchine).
    pub w_queue: f64,
    /// Mean sojourn time, service plus wait.
    pub w_total: f64,
    /// Mean number of blocks in the system.
    pub queue_len: f64,
}

pub fn mdd1_metrics(lambda_a: f64, delta_adv: f64) -> Result<QueueMetrics> {
    if !(lambda_a.is_finite() && lambda_a > 0.0) {
        return Err(Error::invalid("lambda_a", "must be finite and > 0"));
    }
    if !(delta_adv.is_finite() && delta_adv > 0.0) {
        return Err(Error::invalid("delta_adv", "must be finite and > 0"));
    }
    let rho = lambda_a * delta_adv;
    if rho >= 1.0 {
        return Err(Error::UnstableQueue { rho });
    }
    let w_queue = rho * delta_adv / (2.0 * (1.0 - rho));
    let w_total = delta_adv + w_queue;
    Ok(QueueMetrics {
        rho,
        w_queue,
        w_total,
        queue_len: lambda_a * w_total,
    })
}
