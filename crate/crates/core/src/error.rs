use thiserror::Error;

/// Errors raised by the model primitives and solvers.
///
/// Parameter-invariant breaches are not errors; they are reported as data
/// by [`crate::params::validate_params`]. The variants here cover domain
/// violations and numerical preconditions of individual operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matching-function input that must be non-negative was negative.
    #[error("{name} must be non-negative, got {value}")]
    NegativeInput { name: &'static str, value: f64 },

    /// Tightness at or below zero; the vacancy-filling rate diverges there.
    #[error("tightness must be strictly positive, got {0}")]
    NonPositiveTightness(f64),

    /// Research cost outside the efficiency curve's domain.
    #[error("research cost {eta} lies outside the curve domain [0, {domain_max}]")]
    EtaOutsideDomain { eta: f64, domain_max: f64 },

    /// Research cost at or above per-job output; net output would be nonpositive.
    #[error("research cost {eta} leaves no positive net output (y = {y})")]
    EtaExceedsOutput { eta: f64, y: f64 },

    /// Operation requires a non-degenerate equilibrium (theta* > 0).
    #[error("degenerate equilibrium (theta* = 0): {0}")]
    Degenerate(&'static str),

    /// Bisection bracket does not straddle a root.
    #[error("no sign change over [{lo}, {hi}]: g({lo}) = {g_lo}, g({hi}) = {g_hi}")]
    NoSignChange { lo: f64, hi: f64, g_lo: f64, g_hi: f64 },

    /// Sweep grid is empty or not strictly increasing.
    #[error("invalid sweep grid: {0}")]
    InvalidGrid(String),

    /// Simulation or iteration configuration violates its own constraints.
    #[error("invalid configuration: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
