use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Parameters violate a documented invariant.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    /// Input lies outside the domain of a formula.
    #[error("domain error: {0}")]
    Domain(String),

    /// The synchronization queue has utilization at or above one.
    #[error("unstable queue: utilization rho = {rho} >= 1")]
    UnstableQueue { rho: f64 },

    #[error("no sign change of the boundary function on ({lo}, {hi})")]
    NoRootInUnitInterval { lo: f64, hi: f64 },

    #[error("allocation sums to {sum} > 1")]
    Allocation { sum: f64 },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            name,
            reason: reason.into(),
        }
    }
}
