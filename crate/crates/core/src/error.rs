//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by the simulation layer.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A precondition on an argument was violated (out-of-range time,
    /// degenerate radius, too few samples, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A value that must satisfy a numerical contract (unit norm, unitarity)
    /// deviates by more than the stated limit.
    #[error("contract violation: {what} deviates by {deviation:.3e} (limit {limit:.0e})")]
    Contract {
        what: &'static str,
        deviation: f64,
        limit: f64,
    },

    /// A closed curve was required but the endpoints do not meet.
    #[error("closure violated: endpoint gap {gap:.6e} on the Bloch sphere exceeds {tol:.0e}")]
    Closure { gap: f64, tol: f64 },

    /// An integrator lost accuracy; rerun with a smaller step.
    #[error("integrator norm drift {drift:.3e} exceeds {limit:.0e}; reduce dt")]
    Accuracy { drift: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
