//! Cobb-Douglas matching technology and the per-period transition rates.

use serde::Serialize;

use crate::error::{Error, Result};

/// Job-finding and vacancy-filling rates at a given tightness.
///
/// The Cobb-Douglas closed forms can exceed 1, in which case they stop being
/// interpretable as probabilities. The analytic solvers use the raw values
/// exactly as the closed-form equilibrium does; `rate_overflow` records the
/// breach so callers can surface it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatchingOutcome {
    /// Job-finding rate `p = A * theta^(1-alpha)`.
    pub p: f64,
    /// Vacancy-filling rate `q = A * theta^(-alpha)`.
    pub q: f64,
    /// True iff `p > 1` or `q > 1`.
    pub rate_overflow: bool,
}

/// Aggregate matches `M(u, v) = A * u^alpha * v^(1-alpha)`.
///
/// Returns 0 when either side of the market is empty; rejects negative
/// inputs.
pub fn matches(u: f64, v: f64, a: f64, alpha: f64) -> Result<f64> {
    for (name, value) in [("u", u), ("v", v), ("A", a)] {
        if value.is_nan() || value < 0.0 {
            return Err(Error::NegativeInput { name, value });
        }
    }
    if u == 0.0 || v == 0.0 {
        return Ok(0.0);
    }
    Ok(a * u.powf(alpha) * v.powf(1.0 - alpha))
}

/// Transition rates at tightness `theta = v/u`.
///
/// `theta` must be strictly positive: the filling rate diverges as the
/// vacancy side empties out.
pub fn finding_and_filling_rates(theta: f64, a: f64, alpha: f64) -> Result<MatchingOutcome> {
    if theta.is_nan() || theta <= 0.0 {
        return Err(Error::NonPositiveTightness(theta));
    }
    if a.is_nan() || a < 0.0 {
        return Err(Error::NegativeInput { name: "A", value: a });
    }
    let p = a * theta.powf(1.0 - alpha);
    let q = a * theta.powf(-alpha);
    Ok(MatchingOutcome {
        p,
        q,
        rate_overflow: p > 1.0 || q > 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_returns_at_equal_stocks() {
        // With u = v the Cobb-Douglas collapses to A * u.
        assert!((matches(0.25, 0.25, 1.0, 0.5).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn empty_market_side_means_no_matches() {
        assert_eq!(matches(0.5, 0.0, 1.0, 0.5).unwrap(), 0.0);
        assert_eq!(matches(0.0, 0.5, 1.0, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn matches_at_the_benchmark_equilibrium_point() {
        // u*, v* of the benchmark point at eta = 0.5; expected value frozen
        // from an independent evaluation of A * sqrt(u * v).
        let u = 128.0 / 137.0;
        let v = 0.0087890625 * u;
        let m = matches(u, v, 0.375, 0.5).unwrap();
        assert!((m - 0.032846715328467).abs() < 1e-12, "got {m}");
        let direct = 0.375 * (u * v).sqrt();
        assert!((m - direct).abs() < 1e-15);
    }

    #[test]
    fn negative_inputs_are_rejected() {
        assert!(matches(-0.1, 0.5, 1.0, 0.5).is_err());
        assert!(matches(0.5, -0.1, 1.0, 0.5).is_err());
        assert!(matches(0.5, 0.5, -1.0, 0.5).is_err());
        assert!(matches(f64::NAN, 0.5, 1.0, 0.5).is_err());
    }

    #[test]
    fn rates_at_unit_tightness_equal_efficiency() {
        let out = finding_and_filling_rates(1.0, 1.0, 0.5).unwrap();
        assert_eq!(out.p, 1.0);
        assert_eq!(out.q, 1.0);
        assert!(!out.rate_overflow);
    }

    #[test]
    fn rates_at_the_benchmark_tightness() {
        // theta* of the benchmark point at eta = 0.5: 0.375 * 0.09375^(+-1).
        let out = finding_and_filling_rates(0.0087890625, 0.375, 0.5).unwrap();
        assert!((out.p - 0.03515625).abs() < 1e-15, "p = {}", out.p);
        assert!((out.q - 4.0).abs() < 1e-12, "q = {}", out.q);
        assert!(out.rate_overflow);
    }

    #[test]
    fn overflow_flag_tracks_either_rate() {
        let out = finding_and_filling_rates(0.25, 1.0, 0.5).unwrap();
        assert!((out.p - 0.5).abs() < 1e-15);
        assert!((out.q - 2.0).abs() < 1e-12);
        assert!(out.rate_overflow);
    }

    #[test]
    fn zero_tightness_is_rejected() {
        assert!(matches!(
            finding_and_filling_rates(0.0, 1.0, 0.5),
            Err(Error::NonPositiveTightness(_))
        ));
        assert!(finding_and_filling_rates(-1.0, 1.0, 0.5).is_err());
    }
}
