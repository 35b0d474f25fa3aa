//! Discrete-event Monte Carlo engine for chain growth and the private race.
//!
//! Trials are independent and run in parallel on the rayon pool. Each trial
//! draws from its own seeded streams (see [`rng`]) and results are reduced in
//! trial order, so output depends only on the configuration and seed.

pub mod config;
pub mod event;
pub mod growth;
pub mod process;
pub mod race;
pub mod rng;
pub mod threshold;

pub use config::{AdvSyncMode, SimConfig};
pub use growth::{simulate_adversarial_growth, simulate_honest_growth, GrowthEstimate};
pub use race::{simulate_private_race, RaceResult};
pub use threshold::{estimate_empirical_threshold, EmpiricalThreshold};
