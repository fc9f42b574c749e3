//! Costs, infection risk, and the marginal utility of distancing.

use serde::Serialize;

use crate::error::{Compartment, Error, Result};
use crate::integrate::{integrate, Trajectory};
use crate::model::{check_delta, CompartmentState, EpiParams, Scenario};

pub const DEFAULT_FD_STEP: f64 = 0.01;
pub const MAX_FD_STEP: f64 = 0.05;
pub const DEFAULT_DT_COST: f64 = 1.0;

/// Relative width of the tie band in [`preferred_strategy`].
pub const INDIFFERENCE_TOLERANCE: f64 = 1e-12;

/// Per-person, per-day costs of distancing and of illness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostParams {
    pub c_d: f64,
    pub c_i: f64,
}

impl CostParams {
    pub fn new(c_d: f64, c_i: f64) -> Result<Self> {
        let costs = CostParams { c_d, c_i };
        costs.validate()?;
        Ok(costs)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.c_d >= 0.0) || !self.c_d.is_finite() {
            return Err(Error::domain(format!("c_d must be >= 0, got {}", self.c_d)));
        }
        if !(self.c_i >= 0.0) || !self.c_i.is_finite() {
            return Err(Error::domain(format!("c_i must be >= 0, got {}", self.c_i)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyChoice {
    Distance,
    NotDistance,
    /// Both strategies cost the same.
    Indifferent,
}

impl StrategyChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            StrategyChoice::Distance => "distance",
            StrategyChoice::NotDistance => "not_distance",
            StrategyChoice::Indifferent => "indifferent",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RiskPoint {
    pub t: f64,
    pub risk: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepCosts {
    pub j_distance: f64,
    pub j_not: f64,
}

/// Cost fraction at a point; `Unbounded` when nobody distances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CostFraction {
    Finite(f64),
    Unbounded,
}

impl CostFraction {
    /// `Unbounded` maps to `f64::INFINITY`.
    pub fn to_f64(self) -> f64 {
        match self {
            CostFraction::Finite(v) => v,
            CostFraction::Unbounded => f64::INFINITY,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, CostFraction::Unbounded)
    }
}

/// Per-day infection risk for a non-distancing susceptible: `beta * S * I / n^2`.
///
/// Uses the undistanced `beta`; distancing acts only through the trajectory.
pub fn infection_risk(state: &CompartmentState, params: &EpiParams) -> f64 {
    let n = params.n();
    params.beta() * state.s * state.i / (n * n)
}

pub fn risk_series(trajectory: &Trajectory) -> Vec<RiskPoint> {
    let params = &trajectory.scenario.params;
    trajectory
        .states
        .iter()
        .map(|s| RiskPoint { t: s.t, risk: infection_risk(s, params) })
        .collect()
}

pub fn step_costs(state: &CompartmentState, params: &EpiParams, costs: &CostParams) -> StepCosts {
    StepCosts {
        j_distance: costs.c_d,
        j_not: infection_risk(state, params) * costs.c_i,
    }
}

pub fn preferred_strategy(
    state: &CompartmentState,
    params: &EpiParams,
    costs: &CostParams,
) -> StrategyChoice {
    let StepCosts { j_distance, j_not } = step_costs(state, params, costs);
    let scale = j_distance.abs().max(j_not.abs());
    if (j_distance - j_not).abs() <= INDIFFERENCE_TOLERANCE * scale {
        StrategyChoice::Indifferent
    } else if j_distance < j_not {
        StrategyChoice::Distance
    } else {
        StrategyChoice::NotDistance
    }
}

/// Population cost per day: `n * (delta * c_d + (1 - delta) * r_i * c_i)`.
pub fn social_cost_at(
    state: &CompartmentState,
    delta: f64,
    params: &EpiParams,
    costs: &CostParams,
) -> Result<f64> {
    check_delta(delta)?;
    let StepCosts { j_distance, j_not } = step_costs(state, params, costs);
    Ok(params.n() * (delta * j_distance + (1.0 - delta) * j_not))
}

/// Left-rectangle sum of [`social_cost_at`] over `[t0, tf)` with width `dt_cost`.
///
/// `dt_cost` must be a whole multiple of the trajectory's `dt_output` and must
/// divide the horizon.
pub fn total_social_cost(trajectory: &Trajectory, costs: &CostParams, dt_cost: f64) -> Result<f64> {
    costs.validate()?;
    let scenario = &trajectory.scenario;
    let stride = cost_stride(scenario, dt_cost)?;
    let last = trajectory.len() - 1;
    let mut total = 0.0;
    for state in trajectory.states[..last].iter().step_by(stride) {
        total += social_cost_at(state, scenario.delta, &scenario.params, costs)? * dt_cost;
    }
    Ok(total)
}

fn cost_stride(scenario: &Scenario, dt_cost: f64) -> Result<usize> {
    let err = || Error::Alignment { dt_cost, dt_output: scenario.dt_output };
    if !(dt_cost > 0.0) || !dt_cost.is_finite() {
        return Err(err());
    }
    let stride = (dt_cost / scenario.dt_output).round();
    if stride < 1.0 || (stride * scenario.dt_output - dt_cost).abs() > 1e-9 * dt_cost {
        return Err(err());
    }
    let stride = stride as usize;
    if scenario.output_intervals()? % stride != 0 {
        return Err(err());
    }
    Ok(stride)
}

/// `(1 - delta) * R0 * gamma * S * I / (delta * n^2)`.
pub fn cost_fraction(state: &CompartmentState, delta: f64, params: &EpiParams) -> Result<CostFraction> {
    check_delta(delta)?;
    if delta == 0.0 {
        return Ok(CostFraction::Unbounded);
    }
    let n = params.n();
    Ok(CostFraction::Finite(
        (1.0 - delta) * params.beta() * state.s * state.i / (delta * n * n),
    ))
}

/// Finite-difference stencil used for a given `delta` and step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stencil {
    Central,
    /// Second-order one-sided, used near `delta = 0`.
    Forward,
    /// Second-order one-sided, used near `delta = 1`.
    Backward,
}

impl Stencil {
    pub fn choose(delta: f64, h: f64) -> Stencil {
        if delta - h < 0.0 {
            Stencil::Forward
        } else if delta + h > 1.0 {
            Stencil::Backward
        } else {
            Stencil::Central
        }
    }
}

fn check_fd_step(h: f64) -> Result<()> {
    if !(h > 0.0 && h <= MAX_FD_STEP) {
        return Err(Error::domain(format!("finite-difference step must lie in (0, {MAX_FD_STEP}], got {h}")));
    }
    Ok(())
}

fn infectious_at(scenario: &Scenario, delta: f64) -> Result<Vec<f64>> {
    Ok(integrate(&scenario.with_delta(delta))?.series(Compartment::I))
}

/// `dI/d(delta)` at every output sample of `scenario`.
pub fn marginal_utility_series(scenario: &Scenario, h: f64) -> Result<Vec<f64>> {
    scenario.validate()?;
    check_fd_step(h)?;
    let d = scenario.delta;
    let combine = |w: [f64; 3], a: &[f64], b: &[f64], c: &[f64]| -> Vec<f64> {
        a.iter()
            .zip(b)
            .zip(c)
            .map(|((&a, &b), &c)| (w[0] * a + w[1] * b + w[2] * c) / (2.0 * h))
            .collect()
    };
    match Stencil::choose(d, h) {
        Stencil::Central => {
            let (plus, minus) =
                rayon::join(|| infectious_at(scenario, d + h), || infectious_at(scenario, d - h));
            let (plus, minus) = (plus?, minus?);
            Ok(plus.iter().zip(&minus).map(|(p, m)| (p - m) / (2.0 * h)).collect())
        }
        Stencil::Forward => {
            let (at, (p1, p2)) = rayon::join(
                || infectious_at(scenario, d),
                || rayon::join(|| infectious_at(scenario, d + h), || infectious_at(scenario, d + 2.0 * h)),
            );
            Ok(combine([-3.0, 4.0, -1.0], &at?, &p1?, &p2?))
        }
        Stencil::Backward => {
            let (at, (m1, m2)) = rayon::join(
                || infectious_at(scenario, d),
                || rayon::join(|| infectious_at(scenario, d - h), || infectious_at(scenario, d - 2.0 * h)),
            );
            Ok(combine([3.0, -4.0, 1.0], &at?, &m1?, &m2?))
        }
    }
}

/// Marginal utility of distancing, `dI/d(delta)` at time `t`.
pub fn marginal_utility(scenario: &Scenario, t: f64, h: f64) -> Result<f64> {
    scenario.validate()?;
    let j = scenario.output_index(t)?;
    Ok(marginal_utility_series(scenario, h)?[j])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StrategyRow {
    pub t: f64,
    pub r_i: f64,
    pub j_distance: f64,
    pub j_not: f64,
    pub preferred: StrategyChoice,
}

/// Instantaneous cost comparison at every sample of a trajectory.
pub fn strategy_report(trajectory: &Trajectory, costs: &CostParams) -> Result<Vec<StrategyRow>> {
    costs.validate()?;
    let params = &trajectory.scenario.params;
    Ok(trajectory
        .states
        .iter()
        .map(|s| {
            let sc = step_costs(s, params, costs);
            StrategyRow {
                t: s.t,
                r_i: infection_risk(s, params),
                j_distance: sc.j_distance,
                j_not: sc.j_not,
                preferred: preferred_strategy(s, params, costs),
            }
        })
        .collect())
}
