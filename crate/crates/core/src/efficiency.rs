//! Innovation technology: matching efficiency as a function of research cost.

use serde::Serialize;

use crate::error::{Error, Result};

/// An efficiency curve `A(eta)` mapping per-period research spending to the
/// efficiency level of the matching function.
///
/// Every family must be increasing and concave on `[0, domain_max]` with
/// `A(eta) >= 0`. The quadratic family `scale * (eta - eta^2/2)` is the
/// built-in instance; its slope `scale * (1 - eta)` stays positive only up
/// to `eta = 1`, so `domain_max <= 1` is required there. Adding a family
/// means supplying a level, a derivative, and a domain, and passing the
/// shape probes in the test suite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EfficiencyCurve {
    Quadratic { scale: f64, domain_max: f64 },
}

impl EfficiencyCurve {
    /// Quadratic curve with the full admissible domain `[0, 1]`.
    pub fn quadratic(scale: f64) -> Self {
        EfficiencyCurve::Quadratic {
            scale,
            domain_max: 1.0,
        }
    }

    /// Largest admissible research cost.
    pub fn domain_max(&self) -> f64 {
        match *self {
            EfficiencyCurve::Quadratic { domain_max, .. } => domain_max,
        }
    }

    /// Efficiency level `A(eta)`.
    pub fn level(&self, eta: f64) -> Result<f64> {
        self.check_domain(eta)?;
        match *self {
            EfficiencyCurve::Quadratic { scale, .. } => Ok(scale * (eta - 0.5 * eta * eta)),
        }
    }

    /// Marginal efficiency `A'(eta)`.
    pub fn derivative(&self, eta: f64) -> Result<f64> {
        self.check_domain(eta)?;
        match *self {
            EfficiencyCurve::Quadratic { scale, .. } => Ok(scale * (1.0 - eta)),
        }
    }

    fn check_domain(&self, eta: f64) -> Result<()> {
        let max = self.domain_max();
        if eta.is_nan() || eta < 0.0 || eta > max {
            return Err(Error::EtaOutsideDomain {
                eta,
                domain_max: max,
            });
        }
        Ok(())
    }
}
