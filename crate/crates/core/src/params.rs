//! Structural parameters, policy instruments, and their validation.

use serde::Serialize;
use std::fmt;

use crate::efficiency::EfficiencyCurve;

/// Structural primitives shared by every computation.
///
/// All quantities are per period. The discount factor is derived from the
/// net interest rate as `beta = 1/(1+r)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ModelParams {
    /// Output per filled job (goods units).
    pub y: f64,
    /// Unemployment benefit (goods units). Carried and validated (`y > b`)
    /// but absent from the equilibrium formulas: the mandated wage rule
    /// replaces bargaining, so the benefit never enters a surplus split.
    pub b: f64,
    /// Vacancy-posting cost (goods units).
    pub c: f64,
    /// Net interest rate.
    pub r: f64,
    /// Separation probability.
    pub delta: f64,
    /// Matching elasticity on unemployment.
    pub alpha: f64,
}

impl ModelParams {
    /// One-period discount factor `1/(1+r)`.
    pub fn beta(&self) -> f64 {
        1.0 / (1.0 + self.r)
    }
}

impl Default for ModelParams {
    /// Benchmark calibration used by the CLI defaults and the test suite:
    /// `y=1, b=0, c=1, r=0.5, delta=0.5, alpha=0.5`.
    fn default() -> Self {
        Self {
            y: 1.0,
            b: 0.0,
            c: 1.0,
            r: 0.5,
            delta: 0.5,
            alpha: 0.5,
        }
    }
}

/// Government instruments: the mandated wage share and the two tax rates.
///
/// The wage rule pays each worker `gamma * (y - eta)`; firms pay a fraction
/// `tau_f` of flow profit, workers a fraction `tau_w` of the wage. The worker
/// tax never enters a firm-side condition, so equilibrium quantities are
/// invariant to `tau_w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolicyRegime {
    /// Mandated wage share of net output, in (0, 1).
    pub gamma: f64,
    /// Firm profit tax rate, in [0, 1).
    pub tau_f: f64,
    /// Worker wage tax rate, in [0, 1).
    pub tau_w: f64,
}

impl Default for PolicyRegime {
    fn default() -> Self {
        Self {
            gamma: 0.5,
            tau_f: 0.0,
            tau_w: 0.0,
        }
    }
}

/// One fully specified parameter point: structural parameters, the
/// innovation technology, the policy regime, and the research cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelPoint {
    pub params: ModelParams,
    pub curve: EfficiencyCurve,
    pub policy: PolicyRegime,
    pub eta: f64,
}

/// A single violated constraint together with the offending value.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    /// The constraint, stated as written in the parameter contracts,
    /// e.g. `"y > b"` or `"0 < alpha < 1"`.
    pub constraint: &'static str,
    /// The value that broke it.
    pub value: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "violated `{}` (offending value {})", self.constraint, self.value)
    }
}

/// Outcome of [`validate_params`]: empty means the point is admissible.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "ok")
        } else {
            for (i, v) in self.violations.iter().enumerate() {
                if i > 0 {
                    writeln!(f)?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
    }
}

/// Checks every parameter invariant and lists each breach.
///
/// Violations are data, not failures: an invalid point yields a non-empty
/// report, never an `Err`.
pub fn validate_params(
    params: &ModelParams,
    curve: &EfficiencyCurve,
    policy: &PolicyRegime,
) -> ValidationReport {
    let mut violations = Vec::new();
    let mut check = |ok: bool, constraint: &'static str, value: f64| {
        if !ok {
            violations.push(Violation { constraint, value });
        }
    };

    for (name, v) in [
        ("y finite", params.y),
        ("b finite", params.b),
        ("c finite", params.c),
        ("r finite", params.r),
        ("delta finite", params.delta),
        ("alpha finite", params.alpha),
        ("gamma finite", policy.gamma),
        ("tau_f finite", policy.tau_f),
        ("tau_w finite", policy.tau_w),
    ] {
        check(v.is_finite(), name, v);
    }

    check(params.b >= 0.0, "b >= 0", params.b);
    check(params.y > params.b, "y > b", params.y);
    check(params.c > 0.0, "c > 0", params.c);
    check(params.r > 0.0, "r > 0", params.r);
    check(
        params.delta > 0.0 && params.delta < 1.0,
        "0 < delta < 1",
        params.delta,
    );
    check(
        params.alpha > 0.0 && params.alpha < 1.0,
        "0 < alpha < 1",
        params.alpha,
    );

    let beta = params.beta();
    check(beta > 0.0 && beta < 1.0, "0 < beta < 1", beta);

    match *curve {
        EfficiencyCurve::Quadratic { scale, domain_max } => {
            check(scale.is_finite() && scale > 0.0, "scale > 0", scale);
            // The quadratic family is increasing only up to eta = 1.
            check(
                domain_max.is_finite() && domain_max > 0.0 && domain_max <= 1.0,
                "0 < domain_max <= 1 (quadratic)",
                domain_max,
            );
        }
    }

    check(
        policy.gamma > 0.0 && policy.gamma < 1.0,
        "0 < gamma < 1",
        policy.gamma,
    );
    check(
        policy.tau_f >= 0.0 && policy.tau_f < 1.0,
        "0 <= tau_f < 1",
        policy.tau_f,
    );
    check(
        policy.tau_w >= 0.0 && policy.tau_w < 1.0,
        "0 <= tau_w < 1",
        policy.tau_w,
    );

    ValidationReport { violations }
}
