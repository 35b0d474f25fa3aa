//! Security analysis of longest-chain blockchains in which honest nodes and
//! the adversary each suffer their own communication delay.
//!
//! * [`analytic`] holds the closed-form model: growth rates, M/D/1 metrics,
//!   static and dynamic thresholds, and the corruption exceedance probability.
//! * [`sim`] is a discrete-event Monte Carlo simulator of chain growth and the
//!   private-attack race.
//! * [`corruption`] samples the binomial corruption model and compares it with
//!   the exact and Gaussian tails.

pub mod analytic;
pub mod corruption;
pub mod error;
pub mod sim;

pub use analytic::{
    DynamicParams, QueueMetrics, SecurityReport, StaticParams, ThresholdMethod, ThresholdResult,
};
pub use corruption::{CorruptionRun, ExceedanceEstimate};
pub use error::{Error, Result};
pub use sim::{AdvSyncMode, GrowthEstimate, RaceResult, SimConfig};
