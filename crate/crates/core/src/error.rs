use thiserror::Error;

use crate::dynamics::OrbitStatus;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the real domain of the operation.
    #[error("{name} = {value} is outside the domain: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// A parameter violates a type invariant. `name` is the field name.
    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("quadrature did not reach the target accuracy: estimated relative error {est_rel_error:e} after {nodes_used} nodes")]
    AccuracyNotReached {
        est_rel_error: f64,
        nodes_used: usize,
    },

    #[error("period detection needs at least {needed} samples, orbit has {got}")]
    InsufficientSamples { needed: usize, got: usize },

    #[error("orbit did not complete: {0}")]
    OrbitFailed(OrbitStatus),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("no transition from period {from} to period {to} inside [{min}, {max}]")]
    TransitionNotFound {
        from: usize,
        to: usize,
        min: f64,
        max: f64,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// Name of the offending field for parameter and domain errors.
    pub fn field(&self) -> Option<&'static str> {
        match self {
            Error::Domain { name, .. } | Error::InvalidParameter { name, .. } => Some(name),
            _ => None,
        }
    }
}
