//! Grid evaluation behind the trajectory panel and the `(delta, t)` fields.
//!
//! Cells are independent and evaluated in parallel with rayon. Indexed
//! parallel collection keeps results in grid order, so output does not depend
//! on scheduling or thread count.

use rayon::prelude::*;
use serde::Serialize;

use crate::econ::{cost_fraction, marginal_utility_series};
use crate::error::{Compartment, Error, Result};
use crate::integrate::{integrate, Trajectory};
use crate::model::{EpiParams, Scenario};

pub const DEFAULT_R0_VALUES: [f64; 6] = [1.5, 2.5, 3.5, 4.5, 5.5, 6.5];
pub const DEFAULT_GAMMA_INV_VALUES: [f64; 5] = [4.6, 6.55, 8.5, 10.45, 12.4];

/// `0, 0.05, ..., 1` (21 points).
pub fn default_delta_values() -> Vec<f64> {
    (0..=20).map(|k| k as f64 / 20.0).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridSpec {
    pub r0_values: Vec<f64>,
    pub gamma_inv_values: Vec<f64>,
    pub delta_values: Vec<f64>,
    /// Template for every cell: population, seed, horizon and steps. Its
    /// parameters also fix `(r0, gamma)` for the `(delta, t)` fields.
    pub base: Scenario,
}

impl GridSpec {
    pub fn new(base: Scenario) -> Self {
        GridSpec {
            r0_values: DEFAULT_R0_VALUES.to_vec(),
            gamma_inv_values: DEFAULT_GAMMA_INV_VALUES.to_vec(),
            delta_values: default_delta_values(),
            base,
        }
    }

    pub fn baseline() -> Self {
        Self::new(Scenario::baseline())
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        check_axis("r0_values", &self.r0_values, |v| v > 0.0 && v.is_finite())?;
        check_axis("gamma_inv_values", &self.gamma_inv_values, |v| v > 0.0 && v.is_finite())?;
        check_axis("delta_values", &self.delta_values, |v| (0.0..=1.0).contains(&v))?;
        Ok(())
    }
}

fn check_axis(name: &str, values: &[f64], admissible: impl Fn(f64) -> bool) -> Result<()> {
    if values.is_empty() {
        return Err(Error::domain(format!("{name} must not be empty")));
    }
    if let Some(v) = values.iter().find(|&&v| !admissible(v)) {
        return Err(Error::domain(format!("{name} contains inadmissible value {v}")));
    }
    if values.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain(format!("{name} must be strictly increasing")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    S,
    I,
    R,
    MarginalUtility,
    CostFraction,
}

impl From<Compartment> for Quantity {
    fn from(c: Compartment) -> Self {
        match c {
            Compartment::S => Quantity::S,
            Compartment::I => Quantity::I,
            Compartment::R => Quantity::R,
        }
    }
}

/// A scalar field over two axes, stored row-major (`axis1` outer).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FieldResult {
    pub axis1_name: String,
    pub axis2_name: String,
    pub axis1_values: Vec<f64>,
    pub axis2_values: Vec<f64>,
    pub values: Vec<f64>,
    pub quantity: Quantity,
}

impl FieldResult {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.axis2_values.len() + j]
    }

    /// All values for `axis1_values[i]`.
    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.axis2_values.len();
        &self.values[i * w..(i + 1) * w]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.axis1_values.len(), self.axis2_values.len())
    }

    fn from_rows(grid: &GridSpec, times: Vec<f64>, rows: Vec<Vec<f64>>, quantity: Quantity) -> Self {
        FieldResult {
            axis1_name: "delta".into(),
            axis2_name: "t".into(),
            axis1_values: grid.delta_values.clone(),
            axis2_values: times,
            values: rows.concat(),
            quantity,
        }
    }
}

fn tag<T>(coords: impl FnOnce() -> String, r: Result<T>) -> Result<T> {
    r.map_err(|e| Error::Cell { coords: coords(), source: Box::new(e) })
}

/// One undistanced trajectory per `(r0, gamma_inv)` pair, row-major by
/// `(r0 index, gamma_inv index)`.
pub fn sweep_r0_gamma(grid: &GridSpec) -> Result<Vec<Trajectory>> {
    grid.validate()?;
    let n = grid.base.params.n();
    let cells: Vec<(f64, f64)> = grid
        .r0_values
        .iter()
        .flat_map(|&r0| grid.gamma_inv_values.iter().map(move |&g| (r0, g)))
        .collect();
    cells
        .par_iter()
        .map(|&(r0, gamma_inv)| {
            tag(
                || format!("(r0={r0}, gamma_inv={gamma_inv})"),
                EpiParams::from_infectious_period(r0, gamma_inv, n)
                    .and_then(|p| integrate(&grid.base.with_params(p).with_delta(0.0))),
            )
        })
        .collect()
}

fn per_delta<F>(grid: &GridSpec, quantity: Quantity, column: F) -> Result<FieldResult>
where
    F: Fn(&Scenario) -> Result<Vec<f64>> + Sync,
{
    grid.validate()?;
    let times = grid.base.output_times()?;
    let rows = grid
        .delta_values
        .par_iter()
        .map(|&d| tag(|| format!("(delta={d})"), column(&grid.base.with_delta(d))))
        .collect::<Result<Vec<_>>>()?;
    Ok(FieldResult::from_rows(grid, times, rows, quantity))
}

/// Compartment size over `(delta, t)`.
pub fn field_by_delta(grid: &GridSpec, quantity: Compartment) -> Result<FieldResult> {
    per_delta(grid, quantity.into(), |s| Ok(integrate(s)?.series(quantity)))
}

/// Marginal utility `dI/d(delta)` over `(delta, t)`.
pub fn utility_field(grid: &GridSpec, h: f64) -> Result<FieldResult> {
    per_delta(grid, Quantity::MarginalUtility, |s| marginal_utility_series(s, h))
}

/// Cost fraction over `(delta, t)`, each row along its own trajectory. The
/// `delta = 0` row is `f64::INFINITY`.
pub fn cost_fraction_field(grid: &GridSpec) -> Result<FieldResult> {
    per_delta(grid, Quantity::CostFraction, |s| {
        let traj = integrate(s)?;
        traj.states
            .iter()
            .map(|st| Ok(cost_fraction(st, s.delta, &s.params)?.to_f64()))
            .collect()
    })
}
