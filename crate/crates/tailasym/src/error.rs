use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The model variant does not support the requested operation.
    #[error("unsupported variant: {0}")]
    Unsupported(String),

    /// An asymptotic expansion was requested below its validity cutoff.
    /// Asymptotic formulas silently degrade at small arguments, so we refuse
    /// to extrapolate instead of returning a misleading number.
    #[error("u = {u} is below the asymptotic validity cutoff u_min = {cutoff}")]
    BelowCutoff { u: f64, cutoff: f64 },

    /// A numerical routine failed to converge or to bracket its target.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Two internal evaluation routes that must agree algebraically did not.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
