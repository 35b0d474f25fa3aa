//! Closed-form dual-delay security model.
//!
//! Everything here is a pure function of its arguments. The simulator and the
//! corruption Monte Carlo validate these formulas empirically.

pub mod binomial;
pub mod dynamic;
pub mod growth;
pub mod normal;
pub mod params;
pub mod queue;
pub mod root;
pub mod security;
pub mod split;
pub mod threshold;

pub use binomial::binomial_upper_tail;
pub use dynamic::{
    corruption_probability, dynamic_boundary, dynamic_threshold_asymptotic,
    dynamic_threshold_exact, honest_delay, total_delay_window, DelayWindow,
};
pub use growth::{effective_adversarial_rate, honest_growth_rate, security_condition_holds};
pub use normal::{normal_cdf, normal_pdf, normal_sf};
pub use params::{DynamicParams, StaticParams};
pub use queue::{mdd1_metrics, QueueMetrics};
pub use security::{
    exceedance_probability, exceedance_report, standardized_threshold, SecurityReport,
};
pub use split::{split_strategy_rates, SplitRates};
pub use threshold::{
    static_boundary, static_threshold_approx, static_threshold_exact, ThresholdMethod,
    ThresholdResult,
};
