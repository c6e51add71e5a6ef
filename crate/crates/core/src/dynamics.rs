//! Independent validation of the analytic steady state: deterministic lake
//! iteration at fixed tightness, and a seeded agent-based matching
//! simulator.
//!
//! Both hold tightness constant at the analytic value. The simulator
//! validates the flow-balance side of the model; the job-creation side is
//! validated analytically by the equilibrium module's residual checks, since
//! the model provides no off-steady-state entry dynamics to simulate.

use rand::distributions::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::equilibrium::solve_tightness;
use crate::error::{Error, Result};
use crate::matching::finding_and_filling_rates;
use crate::params::ModelPoint;

/// One application of the unemployment flow equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LakeStep {
    pub u_next: f64,
    /// Set when the finding rate exceeded 1 or the raw update left `[0, 1]`.
    pub clamped: bool,
}

/// Advances the unemployment rate one period at fixed tightness:
/// `u' = u + delta (1 - u) - p(theta) u`.
///
/// Rates above 1 are clamped before use and the result is clamped to
/// `[0, 1]`; both cases set the flag rather than failing.
pub fn lake_step(u: f64, theta: f64, a: f64, alpha: f64, delta: f64) -> LakeStep {
    let p_raw = if theta > 0.0 {
        a * theta.powf(1.0 - alpha)
    } else {
        0.0
    };
    let p = p_raw.min(1.0);
    let raw = u + delta * (1.0 - u) - p * u;
    let u_next = raw.clamp(0.0, 1.0);
    LakeStep {
        u_next,
        clamped: p_raw > 1.0 || raw != u_next,
    }
}

/// Path of the lake equation iterated from `u0` at fixed tightness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LakeTrajectory {
    /// `u0` followed by one entry per period taken.
    pub u_path: Vec<f64>,
    pub converged: bool,
    /// Periods taken to meet the tolerance (0 when it never was).
    pub periods_to_tolerance: usize,
    /// The tightness held constant throughout.
    pub fixed_theta: f64,
}

impl LakeTrajectory {
    pub fn last(&self) -> f64 {
        *self.u_path.last().expect("path is never empty")
    }
}

/// Iterates [`lake_step`] until successive rates differ by less than `tol`
/// or `max_periods` is exhausted.
///
/// The iteration contracts geometrically with per-period factor
/// `|1 - delta - p(theta)|`, so the stopped value sits within roughly
/// `tol * rho / (1 - rho)` of the fixed point `delta / (delta + p)`.
pub fn iterate_to_steady_state(
    u0: f64,
    theta: f64,
    point: &ModelPoint,
    tol: f64,
    max_periods: usize,
) -> Result<LakeTrajectory> {
    if !(0.0..=1.0).contains(&u0) {
        return Err(Error::InvalidInput(format!("u0 must lie in [0, 1], got {u0}")));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!("tol must be positive, got {tol}")));
    }
    let a = point.curve.level(point.eta)?;
    let (alpha, delta) = (point.params.alpha, point.params.delta);

    let mut u_path = Vec::with_capacity(64);
    u_path.push(u0);
    let mut u = u0;
    for t in 1..=max_periods {
        let step = lake_step(u, theta, a, alpha, delta);
        u_path.push(step.u_next);
        let moved = (step.u_next - u).abs();
        u = step.u_next;
        if moved < tol {
            return Ok(LakeTrajectory {
                u_path,
                converged: true,
                periods_to_tolerance: t,
                fixed_theta: theta,
            });
        }
    }
    Ok(LakeTrajectory {
        u_path,
        converged: false,
        periods_to_tolerance: 0,
        fixed_theta: theta,
    })
}

/// Configuration of the agent-based simulator.
///
/// Identical configurations (including the seed) produce bit-identical
/// results, independent of how many threads the replications run on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub workers: usize,
    pub periods: usize,
    /// Leading periods discarded from the time average.
    pub burn_in: usize,
    pub replications: usize,
    /// Master seed; replication `i` draws from stream `i` of a ChaCha8
    /// generator seeded with it.
    pub seed: u64,
    pub point: ModelPoint,
    /// Record the per-period pooled unemployment path.
    pub record_path: bool,
}

impl SimConfig {
    fn check(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::InvalidInput("workers must be >= 1".into()));
        }
        if self.periods <= self.burn_in {
            return Err(Error::InvalidInput(format!(
                "periods ({}) must exceed burn_in ({})",
                self.periods, self.burn_in
            )));
        }
        if self.replications == 0 {
            return Err(Error::InvalidInput("replications must be >= 1".into()));
        }
        let delta = self.point.params.delta;
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::InvalidInput(format!(
                "delta must lie in [0, 1] to be a separation probability, got {delta}"
            )));
        }
        Ok(())
    }
}

/// Pooled simulator output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimResult {
    /// Mean over replications of the post-burn-in time-averaged
    /// unemployment rate.
    pub u_mean: f64,
    /// Normal-approximation 95% half-width across replication means.
    pub u_ci_halfwidth: f64,
    /// Periods (summed over replications) where the finding probability had
    /// to be clamped to 1.
    pub clamped_rate_events: u64,
    /// Per-replication time averages, in replication order.
    pub rep_means: Vec<f64>,
    /// Per-period unemployment pooled across replications; only recorded on
    /// request.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_period_mean: Option<Vec<f64>>,
}

struct Replication {
    mean: f64,
    path: Option<Vec<f64>>,
}

fn run_replication(config: &SimConfig, p: f64, rep: u64) -> Replication {
    let point = &config.point;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(rep);

    let separate = Bernoulli::new(point.params.delta).expect("delta checked in [0, 1]");
    let find = Bernoulli::new(p).expect("p clamped to [0, 1]");

    // Everyone starts employed; burn-in absorbs the transient.
    let mut employed = vec![true; config.workers];
    let mut path = config.record_path.then(|| Vec::with_capacity(config.periods));
    let mut acc = 0.0;
    for t in 0..config.periods {
        let mut unemployed = 0usize;
        for state in employed.iter_mut() {
            // Separation and finding both act on the start-of-period state.
            *state = if *state {
                !separate.sample(&mut rng)
            } else {
                find.sample(&mut rng)
            };
            if !*state {
                unemployed += 1;
            }
        }
        let u = unemployed as f64 / config.workers as f64;
        if let Some(p) = path.as_mut() {
            p.push(u);
        }
        if t >= config.burn_in {
            acc += u;
        }
    }
    Replication {
        mean: acc / (config.periods - config.burn_in) as f64,
        path,
    }
}

/// Runs the agent-based simulation: each employed worker separates with
/// probability `delta`, each unemployed worker finds a job with probability
/// `min(p(theta*), 1)`, independently, with tightness held at the analytic
/// equilibrium value.
///
/// Replications run in parallel on independent RNG streams and are
/// aggregated in replication order, so the result does not depend on the
/// thread count.
pub fn simulate(config: &SimConfig) -> Result<SimResult> {
    config.check()?;
    let point = &config.point;
    let theta = solve_tightness(&point.params, &point.curve, &point.policy, point.eta)?;
    if theta == 0.0 {
        return Err(Error::Degenerate("simulation needs theta* > 0"));
    }
    let rates = finding_and_filling_rates(theta, point.curve.level(point.eta)?, point.params.alpha)?;
    let p = rates.p.min(1.0);
    let clamped_per_rep = if rates.p > 1.0 { config.periods as u64 } else { 0 };

    let reps: Vec<Replication> = (0..config.replications as u64)
        .into_par_iter()
        .map(|rep| run_replication(config, p, rep))
        .collect();

    let rep_means: Vec<f64> = reps.iter().map(|r| r.mean).collect();
    let n = rep_means.len() as f64;
    let u_mean = rep_means.iter().sum::<f64>() / n;
    let u_ci_halfwidth = if rep_means.len() > 1 {
        let var = rep_means.iter().map(|m| (m - u_mean).powi(2)).sum::<f64>() / (n - 1.0);
        1.96 * (var / n).sqrt()
    } else {
        0.0
    };

    let per_period_mean = config.record_path.then(|| {
        let mut pooled = vec![0.0; config.periods];
        for rep in &reps {
            for (t, u) in rep.path.as_ref().expect("path recorded").iter().enumerate() {
                pooled[t] += u;
            }
        }
        pooled.iter_mut().for_each(|v| *v /= n);
        pooled
    });

    Ok(SimResult {
        u_mean,
        u_ci_halfwidth,
        clamped_rate_events: clamped_per_rep * config.replications as u64,
        rep_means,
        per_period_mean,
    })
}
