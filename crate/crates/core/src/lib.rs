//! Deterministic simulation and cost analysis of social distancing treated as
//! a population-level game over SIR dynamics.
//!
//! A fraction `delta` of the population distances, scaling the S to I flow by
//! `1 - delta`. On top of the integrated trajectories the crate computes the
//! infection risk faced by a non-distancing susceptible, the per-step and
//! total social costs, the break-even cost fraction `c_d / c_i`, and the
//! marginal utility `dI/d(delta)`. The [`sweep`] module evaluates these over
//! parameter grids; [`output`] writes them as CSV.
//!
//! ```
//! use distgame::{integrate, peak_prevalence_analytic, Scenario};
//!
//! let traj = integrate(&Scenario::baseline()).unwrap();
//! let peak = traj.peak().i / 10_000.0;
//! let expected = peak_prevalence_analytic(2.67, 0.999, 0.001).unwrap();
//! assert!((peak - expected).abs() < 0.005);
//! ```
//!
//! See the `examples/` directory for one runnable program per capability.

// Negated comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod econ;
pub mod error;
pub mod integrate;
pub mod model;
pub mod oracle;
pub mod output;
pub mod sweep;

pub use econ::{
    cost_fraction, infection_risk, marginal_utility, marginal_utility_series, preferred_strategy,
    social_cost_at, step_costs, strategy_report, total_social_cost, CostFraction, CostParams,
    RiskPoint, StepCosts, StrategyChoice, StrategyRow,
};
pub use error::{Compartment, Error, Result};
pub use integrate::{integrate, Trajectory};
pub use model::{beta_from_r0, derivative, CompartmentState, Derivative, EpiParams, Scenario};
pub use oracle::{final_size_oracle, peak_prevalence_analytic};
pub use sweep::{
    cost_fraction_field, field_by_delta, sweep_r0_gamma, utility_field, FieldResult, GridSpec,
    Quantity,
};
