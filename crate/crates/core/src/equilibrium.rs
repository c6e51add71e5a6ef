//! Closed-form steady-state equilibrium and its verification.
//!
//! The equilibrium is fully closed-form: the mandated wage together with the
//! job-creation condition pins down tightness, and the Beveridge curve maps
//! tightness into unemployment. Nothing here iterates; the Bellman residuals
//! are a verification layer, not a solver.

use serde::Serialize;

use crate::efficiency::EfficiencyCurve;
use crate::error::{Error, Result};
use crate::matching::finding_and_filling_rates;
use crate::params::{ModelParams, ModelPoint, PolicyRegime};

/// Everything known about one steady-state parameter point.
///
/// A degenerate point (`theta_star = 0`, which happens exactly when the
/// efficiency level vanishes) reports `u_star = 1`, `v_star = 0`, and leaves
/// the filled-job value and the residuals absent: with no matching there is
/// no finite expected vacancy duration to price.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub eta: f64,
    pub gamma: f64,
    pub tau_f: f64,
    pub tau_w: f64,
    /// Equilibrium tightness `theta* = [(1-tau_f)(1-gamma) A(eta) (y-eta) / ((r+delta) c)]^(1/alpha)`.
    pub theta_star: f64,
    /// Job-finding rate at `theta*`.
    pub p_star: f64,
    /// Vacancy-filling rate at `theta*` (0 in the degenerate case).
    pub q_star: f64,
    /// Steady-state unemployment rate.
    pub u_star: f64,
    /// Vacancy mass `theta* * u_star`.
    pub v_star: f64,
    /// Mandated wage `gamma * (y - eta)`.
    pub wage: f64,
    /// Worker take-home `(1 - tau_w) * wage`.
    pub wage_net: f64,
    /// Value of a filled job, `c / (beta q(theta*))`.
    #[serde(rename = "J_F")]
    pub j_f: Option<f64>,
    /// Filled-job Bellman equation residual (left side minus right side).
    #[serde(rename = "bellman_residual_F")]
    pub bellman_residual_f: Option<f64>,
    /// Vacant-job Bellman residual at `J_V = 0`.
    pub free_entry_residual: Option<f64>,
    /// True iff `p > 1` or `q > 1` at `theta*`.
    pub rate_overflow: bool,
}

impl EquilibriumReport {
    /// True when matching shuts down and the point carries no firm values.
    pub fn is_degenerate(&self) -> bool {
        self.theta_star == 0.0
    }
}

fn check_eta(params: &ModelParams, curve: &EfficiencyCurve, eta: f64) -> Result<()> {
    // Curve-domain errors take precedence; the curve cannot even be
    // evaluated outside its domain.
    if eta.is_nan() || eta < 0.0 || eta > curve.domain_max() {
        return Err(Error::EtaOutsideDomain {
            eta,
            domain_max: curve.domain_max(),
        });
    }
    if eta >= params.y {
        return Err(Error::EtaExceedsOutput { eta, y: params.y });
    }
    Ok(())
}

/// Equilibrium tightness.
///
/// With `tau_f = 0` this is exactly the no-tax closed form; the firm tax
/// scales the job-creation surplus by `(1 - tau_f)`. Returns 0 when the
/// efficiency level is 0.
pub fn solve_tightness(
    params: &ModelParams,
    curve: &EfficiencyCurve,
    policy: &PolicyRegime,
    eta: f64,
) -> Result<f64> {
    check_eta(params, curve, eta)?;
    let a = curve.level(eta)?;
    let base = (1.0 - policy.tau_f) * (1.0 - policy.gamma) * a * (params.y - eta)
        / ((params.r + params.delta) * params.c);
    Ok(base.powf(1.0 / params.alpha))
}

/// Steady-state unemployment, evaluated directly from the closed form
///
/// ```text
/// u* = delta / (delta + K^((1-alpha)/alpha) * [A(eta) (y-eta)^(1-alpha)]^(1/alpha)),
/// K  = (1-tau_f)(1-gamma) / ((r+delta) c).
/// ```
///
/// This is one of two routes to `u*`; the other goes through
/// [`solve_tightness`] and the Beveridge curve `delta / (delta + p(theta*))`.
/// The two agree to better than 1e-12 relative and the test suite holds them
/// to it. Returns 1 when `theta* = 0`.
pub fn solve_unemployment(
    params: &ModelParams,
    curve: &EfficiencyCurve,
    policy: &PolicyRegime,
    eta: f64,
) -> Result<f64> {
    check_eta(params, curve, eta)?;
    let a = curve.level(eta)?;
    let alpha = params.alpha;
    let k = (1.0 - policy.tau_f) * (1.0 - policy.gamma)
        / ((params.r + params.delta) * params.c);
    let s = k.powf((1.0 - alpha) / alpha)
        * (a * (params.y - eta).powf(1.0 - alpha)).powf(1.0 / alpha);
    Ok(params.delta / (params.delta + s))
}

/// The legally mandated wage `gamma * (y - eta)`.
pub fn mandated_wage(params: &ModelParams, policy: &PolicyRegime, eta: f64) -> Result<f64> {
    if eta.is_nan() || eta >= params.y {
        return Err(Error::EtaExceedsOutput { eta, y: params.y });
    }
    Ok(policy.gamma * (params.y - eta))
}

/// Solves the full steady state and populates every report field.
///
/// The filled-job value comes from free entry (`beta q J_F = c`); both
/// Bellman residuals are then formed by substituting `(J_F, J_V = 0, w,
/// theta*)` back into the equations, with the after-tax flow profit
/// `(1-tau_f)(y - eta - w)` in the filled state.
pub fn solve_equilibrium(point: &ModelPoint) -> Result<EquilibriumReport> {
    let ModelPoint {
        params,
        curve,
        policy,
        eta,
    } = *point;

    let theta = solve_tightness(&params, &curve, &policy, eta)?;
    let u = solve_unemployment(&params, &curve, &policy, eta)?;
    let wage = mandated_wage(&params, &policy, eta)?;
    let wage_net = (1.0 - policy.tau_w) * wage;

    let mut report = EquilibriumReport {
        eta,
        gamma: policy.gamma,
        tau_f: policy.tau_f,
        tau_w: policy.tau_w,
        theta_star: theta,
        p_star: 0.0,
        q_star: 0.0,
        u_star: u,
        v_star: theta * u,
        wage,
        wage_net,
        j_f: None,
        bellman_residual_f: None,
        free_entry_residual: None,
        rate_overflow: false,
    };

    if theta == 0.0 {
        // theta* = 0 only when A(eta) = 0, where both rates vanish.
        return Ok(report);
    }

    let a = curve.level(eta)?;
    let rates = finding_and_filling_rates(theta, a, params.alpha)?;
    let beta = params.beta();
    let j_f = params.c / (beta * rates.q);
    let flow = (1.0 - policy.tau_f) * (params.y - eta - wage);

    // Residuals oriented as (left side) - (right side), with J_V = 0.
    let residual_f = j_f - (flow + beta * (params.delta * 0.0 + (1.0 - params.delta) * j_f));
    let residual_v = 0.0 - (-params.c + beta * (rates.q * j_f + (1.0 - rates.q) * 0.0));

    report.p_star = rates.p;
    report.q_star = rates.q;
    report.rate_overflow = rates.rate_overflow;
    report.j_f = Some(j_f);
    report.bellman_residual_f = Some(residual_f);
    report.free_entry_residual = Some(residual_v);
    Ok(report)
}

/// Re-derives both Bellman residuals from a report, along a code path
/// separate from [`solve_equilibrium`]: the filling rate is recomputed from
/// the curve and the filled-job equation is checked in its factored form
/// `J_F (1 - beta (1-delta)) = (1-tau_f)(y - eta - w)`.
///
/// Returns `(filled_residual, free_entry_residual)`; both must vanish (to
/// 1e-9 absolute) for any report produced by the solver.
pub fn verify_free_entry(
    report: &EquilibriumReport,
    params: &ModelParams,
    curve: &EfficiencyCurve,
) -> Result<(f64, f64)> {
    let j_f = match (report.is_degenerate(), report.j_f) {
        (false, Some(j)) => j,
        _ => return Err(Error::Degenerate("no firm values to verify")),
    };
    let beta = params.beta();
    let a = curve.level(report.eta)?;
    let q = a * report.theta_star.powf(-params.alpha);
    let flow = (1.0 - report.tau_f) * (params.y - report.eta - report.wage);
    let residual_f = j_f * (1.0 - beta * (1.0 - params.delta)) - flow;
    let residual_v = params.c - beta * q * j_f;
    Ok((residual_f, residual_v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn benchmark_point(eta: f64) -> ModelPoint {
        ModelPoint {
            params: ModelParams::default(),
            curve: EfficiencyCurve::quadratic(1.0),
            policy: PolicyRegime::default(),
            eta,
        }
    }

    const U_STAR_HALF: f64 = 128.0 / 137.0; // benchmark u* at eta = 0.5

    #[test]
    fn tightness_at_benchmark_point() {
        let p = benchmark_point(0.5);
        let theta = solve_tightness(&p.params, &p.curve, &p.policy, 0.5).unwrap();
        // (0.5 * 0.375 * 0.5 / 1)^2 = 0.09375^2
        assert!((theta - 0.0087890625).abs() < 1e-15, "theta = {theta}");
    }

    #[test]
    fn zero_efficiency_shuts_the_market() {
        let p = benchmark_point(0.0);
        assert_eq!(solve_tightness(&p.params, &p.curve, &p.policy, 0.0).unwrap(), 0.0);
        assert_eq!(
            solve_unemployment(&p.params, &p.curve, &p.policy, 0.0).unwrap(),
            1.0
        );
    }

    #[test]
    fn tightness_under_profit_tax() {
        let mut p = benchmark_point(0.5);
        p.policy.tau_f = 0.5;
        let theta = solve_tightness(&p.params, &p.curve, &p.policy, 0.5).unwrap();
        // (0.25 * 0.375 * 0.5)^2 = 0.046875^2
        assert!((theta - 0.002197265625).abs() < 1e-15, "theta = {theta}");
    }

    #[test]
    fn unemployment_at_benchmark_point() {
        let p = benchmark_point(0.5);
        let u = solve_unemployment(&p.params, &p.curve, &p.policy, 0.5).unwrap();
        assert!((u - U_STAR_HALF).abs() < 1e-12, "u = {u}");
    }

    #[test]
    fn unemployment_under_profit_tax() {
        let mut p = benchmark_point(0.5);
        p.policy.tau_f = 0.5;
        let u = solve_unemployment(&p.params, &p.curve, &p.policy, 0.5).unwrap();
        // 0.5 / (0.5 + 0.017578125) = 256/265
        assert!((u - 256.0 / 265.0).abs() < 1e-12, "u = {u}");
    }

    #[test]
    fn full_wage_share_kills_vacancy_creation() {
        let mut p = benchmark_point(0.5);
        p.policy.gamma = 1.0 - 1e-12;
        let u = solve_unemployment(&p.params, &p.curve, &p.policy, 0.5).unwrap();
        assert!(u > 1.0 - 1e-12, "u = {u}");
    }

    #[test]
    fn eta_at_or_above_output_is_rejected() {
        let p = benchmark_point(0.5);
        // Stays inside the curve domain but exhausts output.
        let mut params = p.params;
        params.y = 0.75;
        assert!(matches!(
            solve_tightness(&params, &p.curve, &p.policy, 0.75),
            Err(Error::EtaExceedsOutput { .. })
        ));
        assert!(matches!(
            solve_unemployment(&params, &p.curve, &p.policy, 0.9),
            Err(Error::EtaExceedsOutput { .. })
        ));
        assert!(matches!(
            solve_tightness(&p.params, &p.curve, &p.policy, 1.5),
            Err(Error::EtaOutsideDomain { .. })
        ));
    }

    #[test]
    fn wage_rule_examples() {
        let params = ModelParams::default();
        let policy = PolicyRegime::default();
        assert!((mandated_wage(&params, &policy, 0.5).unwrap() - 0.25).abs() < 1e-15);
        assert!((mandated_wage(&params, &policy, 0.0).unwrap() - 0.5).abs() < 1e-15);

        let high_share = PolicyRegime {
            gamma: 0.9,
            tau_f: 0.0,
            tau_w: 0.2,
        };
        let w = mandated_wage(&params, &high_share, 0.5).unwrap();
        assert!((w - 0.45).abs() < 1e-15);
        assert!(((1.0 - high_share.tau_w) * w - 0.36).abs() < 1e-15);

        assert!(mandated_wage(&params, &policy, 1.0).is_err());
    }

    #[test]
    fn report_at_benchmark_point() {
        let report = solve_equilibrium(&benchmark_point(0.5)).unwrap();
        assert!((report.theta_star - 0.0087890625).abs() < 1e-15);
        assert!((report.u_star - U_STAR_HALF).abs() < 1e-12);
        assert!((report.v_star - 0.008211678832117).abs() < 1e-12);
        assert!((report.wage - 0.25).abs() < 1e-15);
        let j_f = report.j_f.unwrap();
        assert!((j_f - 0.375).abs() < 1e-12, "J_F = {j_f}");
        assert!(report.bellman_residual_f.unwrap().abs() < 1e-12);
        assert!(report.free_entry_residual.unwrap().abs() < 1e-12);
        assert!(report.rate_overflow, "q = 4 exceeds 1");
    }

    #[test]
    fn degenerate_report_shape() {
        let report = solve_equilibrium(&benchmark_point(0.0)).unwrap();
        assert!(report.is_degenerate());
        assert_eq!(report.u_star, 1.0);
        assert_eq!(report.v_star, 0.0);
        assert_eq!(report.p_star, 0.0);
        assert_eq!(report.q_star, 0.0);
        assert!(report.j_f.is_none());
        assert!(report.bellman_residual_f.is_none());
        assert!(report.free_entry_residual.is_none());
        assert!(!report.rate_overflow);
    }

    #[test]
    fn verification_passes_at_equilibrium() {
        let point = benchmark_point(0.5);
        let report = solve_equilibrium(&point).unwrap();
        let (rf, rv) = verify_free_entry(&report, &point.params, &point.curve).unwrap();
        assert!(rf.abs() < 1e-12, "filled residual {rf}");
        assert!(rv.abs() < 1e-12, "free-entry residual {rv}");
    }

    #[test]
    fn perturbed_filled_value_shifts_residual_linearly() {
        let point = benchmark_point(0.5);
        let mut report = solve_equilibrium(&point).unwrap();
        report.j_f = Some(report.j_f.unwrap() + 0.01);
        let (rf, _) = verify_free_entry(&report, &point.params, &point.curve).unwrap();
        // d residual / d J_F = 1 - beta (1-delta) = 2/3
        assert!((rf - 0.01 * (1.0 - (2.0 / 3.0) * 0.5)).abs() < 1e-9, "rf = {rf}");
    }

    #[test]
    fn perturbed_tightness_moves_free_entry_residual_with_it() {
        let point = benchmark_point(0.5);
        let base = solve_equilibrium(&point).unwrap();

        let mut up = base;
        up.theta_star *= 1.1;
        let (_, rv_up) = verify_free_entry(&up, &point.params, &point.curve).unwrap();
        assert!(rv_up > 0.0, "higher theta lowers q, leaving entry unprofitable");

        let mut down = base;
        down.theta_star *= 0.9;
        let (_, rv_down) = verify_free_entry(&down, &point.params, &point.curve).unwrap();
        assert!(rv_down < 0.0);
    }

    #[test]
    fn degenerate_report_cannot_be_verified() {
        let point = benchmark_point(0.0);
        let report = solve_equilibrium(&point).unwrap();
        assert!(matches!(
            verify_free_entry(&report, &point.params, &point.curve),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn worker_tax_only_touches_take_home_pay() {
        let mut point = benchmark_point(0.5);
        let base = solve_equilibrium(&point).unwrap();
        point.policy.tau_w = 0.7;
        let taxed = solve_equilibrium(&point).unwrap();
        assert_eq!(base.theta_star, taxed.theta_star);
        assert_eq!(base.u_star, taxed.u_star);
        assert_eq!(base.v_star, taxed.v_star);
        assert_eq!(base.wage, taxed.wage);
        assert!((taxed.wage_net - 0.3 * taxed.wage).abs() < 1e-15);
    }
}
