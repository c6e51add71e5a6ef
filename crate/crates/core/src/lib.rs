//! Steady-state search-and-matching labor market model with
//! innovation-dependent matching efficiency, a mandated wage rule, and a
//! firm-profit tax.
//!
//! The model is solved in closed form: the mandated wage `w = gamma (y -
//! eta)` combined with free entry pins down tightness, and the Beveridge
//! curve maps tightness into unemployment. On top of the solver sit the
//! comparative statics (the research-cost threshold and the three analytic
//! derivatives of `u*`), parameter sweeps, and two independent validators:
//! deterministic lake iteration and a seeded agent-based matching
//! simulator.
//!
//! Everything is a pure function over immutable inputs; all types are plain
//! values that can be shared and sent across threads freely.

pub mod dynamics;
pub mod efficiency;
pub mod equilibrium;
pub mod error;
pub mod matching;
pub mod params;
pub mod statics;

pub use dynamics::{
    iterate_to_steady_state, lake_step, simulate, LakeStep, LakeTrajectory, SimConfig, SimResult,
};
pub use efficiency::EfficiencyCurve;
pub use equilibrium::{
    mandated_wage, solve_equilibrium, solve_tightness, solve_unemployment, verify_free_entry,
    EquilibriumReport,
};
pub use error::{Error, Result};
pub use matching::{finding_and_filling_rates, matches, MatchingOutcome};
pub use params::{validate_params, ModelParams, ModelPoint, PolicyRegime, ValidationReport, Violation};
pub use statics::{
    du_deta_analytic, du_dgamma_analytic, du_dtauf_analytic, find_threshold, linspace, sweep,
    threshold_function, SweepRow, SweepTable, SweepVariable, ThresholdResult,
};
