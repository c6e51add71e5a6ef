//! Comparative statics: the research-cost threshold, the analytic
//! derivatives of steady-state unemployment, and one-dimensional sweeps.

use serde::Serialize;
use std::fmt;

use crate::efficiency::EfficiencyCurve;
use crate::equilibrium::{solve_equilibrium, EquilibriumReport};
use crate::error::{Error, Result};
use crate::params::{ModelParams, ModelPoint, PolicyRegime};

/// Interval tolerance for the threshold bisection.
const BISECTION_TOL: f64 = 1e-12;
/// Iteration cap for the threshold bisection.
const BISECTION_MAX_ITER: u32 = 200;

/// Root of the threshold function, located by bracketing bisection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdResult {
    /// The threshold research cost: innovation reduces unemployment below
    /// it and raises unemployment above it.
    pub eta_hat: f64,
    /// Residual of the threshold function at `eta_hat`.
    pub g_at_root: f64,
    /// The isolating interval the search started from.
    pub bracket: (f64, f64),
    /// Bisection iterations performed.
    pub iterations: u32,
}

/// The sign-determining bracket of `du*/deta`:
///
/// ```text
/// g(eta) = A'(eta) (y - eta) - (1 - alpha) A(eta)
/// ```
///
/// Strictly decreasing on `[0, min(y, domain_max)]` for any increasing,
/// concave curve, so its root is unique when the endpoint signs differ.
pub fn threshold_function(
    curve: &EfficiencyCurve,
    params: &ModelParams,
    eta: f64,
) -> Result<f64> {
    let hi = params.y.min(curve.domain_max());
    if eta.is_nan() || eta < 0.0 || eta > hi {
        return Err(Error::EtaOutsideDomain {
            eta,
            domain_max: hi,
        });
    }
    Ok(curve.derivative(eta)? * (params.y - eta) - (1.0 - params.alpha) * curve.level(eta)?)
}

/// Locates the unique root of [`threshold_function`] on
/// `[0, min(y, domain_max)]` by bisection, refining the bracket until it is
/// narrower than 1e-12.
///
/// Fails with [`Error::NoSignChange`] when the endpoint signs do not
/// straddle a root, i.e. the curve admits no interior threshold.
pub fn find_threshold(curve: &EfficiencyCurve, params: &ModelParams) -> Result<ThresholdResult> {
    let lo0 = 0.0;
    let hi0 = params.y.min(curve.domain_max());
    let g_lo = threshold_function(curve, params, lo0)?;
    let g_hi = threshold_function(curve, params, hi0)?;
    if !(g_lo > 0.0 && g_hi < 0.0) {
        return Err(Error::NoSignChange {
            lo: lo0,
            hi: hi0,
            g_lo,
            g_hi,
        });
    }

    let (mut lo, mut hi) = (lo0, hi0);
    let mut iterations = 0;
    while hi - lo > BISECTION_TOL && iterations < BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        // g is decreasing: positive means the root lies to the right.
        if threshold_function(curve, params, mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }

    let eta_hat = 0.5 * (lo + hi);
    Ok(ThresholdResult {
        eta_hat,
        g_at_root: threshold_function(curve, params, eta_hat)?,
        bracket: (lo0, hi0),
        iterations,
    })
}

/// Shared scaffolding of the three derivative formulas.
struct DerivativePieces {
    /// `K = (1-tau_f)(1-gamma) / ((r+delta) c)`.
    k: f64,
    /// `H = A(eta) (y-eta)^(1-alpha)`.
    h: f64,
    /// `S = K^((1-alpha)/alpha) H^(1/alpha)`, the finding rate at `theta*`.
    s: f64,
}

fn derivative_pieces(
    params: &ModelParams,
    curve: &EfficiencyCurve,
    policy: &PolicyRegime,
    eta: f64,
) -> Result<DerivativePieces> {
    let hi = params.y.min(curve.domain_max());
    if eta.is_nan() || eta <= 0.0 || eta >= params.y || eta > hi {
        return Err(Error::EtaOutsideDomain {
            eta,
            domain_max: hi,
        });
    }
    let a = curve.level(eta)?;
    if a <= 0.0 {
        return Err(Error::Degenerate("derivative undefined at theta* = 0"));
    }
    let alpha = params.alpha;
    let k = (1.0 - policy.tau_f) * (1.0 - policy.gamma)
        / ((params.r + params.delta) * params.c);
    let h = a * (params.y - eta).powf(1.0 - alpha);
    let s = k.powf((1.0 - alpha) / alpha) * h.powf(1.0 / alpha);
    Ok(DerivativePieces { k, h, s })
}

/// Analytic `du*/deta`. Sign is `-sign(g(eta))`: unemployment falls with
/// research cost below the threshold and rises above it.
pub fn du_deta_analytic(
    params: &ModelParams,
    curve: &EfficiencyCurve,
    policy: &PolicyRegime,
    eta: f64,
) -> Result<f64> {
    let pieces = derivative_pieces(params, curve, policy, eta)?;
    let alpha = params.alpha;
    let g = threshold_function(curve, params, eta)?;
    let numer = params.delta
        * pieces.k.powf((1.0 - alpha) / alpha)
        * (1.0 / alpha)
        * pieces.h.powf(1.0 / alpha - 1.0);
    let denom = (params.delta + pieces.s).powi(2);
    Ok(-(numer / denom) * (params.y - eta).powf(-alpha) * g)
}

/// Analytic `du*/dgamma`; strictly positive wherever defined. A lower
/// mandated wage share always lowers steady-state unemployment.
pub fn du_dgamma_analytic(
    params: &ModelParams,
    curve: &EfficiencyCurve,
    policy: &PolicyRegime,
    eta: f64,
) -> Result<f64> {
    let pieces = derivative_pieces(params, curve, policy, eta)?;
    let alpha = params.alpha;
    let denom = (params.delta + pieces.s).powi(2);
    Ok(params.delta * ((1.0 - alpha) / alpha) * pieces.s
        / ((1.0 - policy.gamma) * denom))
}

/// Analytic `du*/dtau_f`; strictly positive wherever defined. A lower
/// profit tax always lowers steady-state unemployment.
pub fn du_dtauf_analytic(
    params: &ModelParams,
    curve: &EfficiencyCurve,
    policy: &PolicyRegime,
    eta: f64,
) -> Result<f64> {
    let pieces = derivative_pieces(params, curve, policy, eta)?;
    let alpha = params.alpha;
    let denom = (params.delta + pieces.s).powi(2);
    Ok(params.delta * ((1.0 - alpha) / alpha) * pieces.s
        / ((1.0 - policy.tau_f) * denom))
}

/// Which parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    Eta,
    Gamma,
    TauF,
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVariable::Eta => "eta",
            SweepVariable::Gamma => "gamma",
            SweepVariable::TauF => "tau_f",
        })
    }
}

/// One grid point of a sweep. Per-point solver failures are recorded here
/// rather than aborting the sweep; a grid may legitimately cross the edge
/// of the admissible region.
#[derive(Debug, Clone)]
pub struct SweepRow {
    /// The value the swept variable takes in this row.
    pub value: f64,
    pub outcome: std::result::Result<EquilibriumReport, Error>,
}

/// An ordered table of equilibria along a one-dimensional grid.
#[derive(Debug, Clone)]
pub struct SweepTable {
    pub variable: SweepVariable,
    /// The parameter point every non-swept coordinate is held at.
    pub fixed: ModelPoint,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn grid(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(|r| r.value)
    }

    /// The point row `i` was solved at.
    pub fn point_at(&self, value: f64) -> ModelPoint {
        let mut point = self.fixed;
        match self.variable {
            SweepVariable::Eta => point.eta = value,
            SweepVariable::Gamma => point.policy.gamma = value,
            SweepVariable::TauF => point.policy.tau_f = value,
        }
        point
    }
}

/// Uniform inclusive grid: `steps` intervals, `steps + 1` points, both
/// endpoints exact.
pub fn linspace(from: f64, to: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 || to.is_nan() || from.is_nan() || to <= from {
        return Err(Error::InvalidGrid(format!(
            "need steps >= 1 and to > from, got [{from}, {to}] with {steps} steps"
        )));
    }
    let width = (to - from) / steps as f64;
    let mut grid: Vec<f64> = (0..=steps).map(|i| from + i as f64 * width).collect();
    grid[steps] = to;
    Ok(grid)
}

/// Solves one equilibrium per grid point, all other parameters fixed.
///
/// The grid must be strictly increasing. Every row re-validates its own
/// parameter point, so a grid that wanders outside the admissible range
/// produces error rows, not a failed sweep.
pub fn sweep(variable: SweepVariable, grid: &[f64], fixed: &ModelPoint) -> Result<SweepTable> {
    if grid.is_empty() {
        return Ok(SweepTable {
            variable,
            fixed: *fixed,
            rows: Vec::new(),
        });
    }
    if grid.iter().any(|x| x.is_nan()) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(
            "grid must be strictly increasing".to_string(),
        ));
    }

    let table = SweepTable {
        variable,
        fixed: *fixed,
        rows: Vec::new(),
    };
    let rows = grid
        .iter()
        .map(|&value| {
            let point = table.point_at(value);
            let verdict =
                crate::params::validate_params(&point.params, &point.curve, &point.policy);
            let outcome = if verdict.is_ok() {
                solve_equilibrium(&point)
            } else {
                Err(Error::InvalidInput(verdict.to_string()))
            };
            SweepRow { value, outcome }
        })
        .collect();

    Ok(SweepTable { rows, ..table })
}
