//! Domain types for the distancing-modified SIR system.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_R0: f64 = 2.67;
pub const DEFAULT_GAMMA_INV: f64 = 8.5;
pub const DEFAULT_N: f64 = 10_000.0;
pub const DEFAULT_I0_FRACTION: f64 = 0.001;
pub const DEFAULT_TF: f64 = 180.0;
pub const DEFAULT_DT_INTERNAL: f64 = 0.05;
pub const DEFAULT_DT_OUTPUT: f64 = 0.5;

/// Transmission rate implied by a reproduction number and a recovery rate.
pub fn beta_from_r0(r0: f64, gamma: f64) -> Result<f64> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::domain(format!("gamma must be > 0, got {gamma}")));
    }
    if !(r0 > 0.0) || !r0.is_finite() {
        return Err(Error::domain(format!("r0 must be > 0, got {r0}")));
    }
    Ok(r0 * gamma)
}

/// Transmission and recovery parameters of a closed population.
///
/// `beta` is authoritative for the dynamics. When built from `r0` it is
/// exactly `r0 * gamma`; when built from rates, `r0` is `beta / gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpiParams {
    r0: f64,
    gamma: f64,
    beta: f64,
    n: f64,
}

impl EpiParams {
    pub fn new(r0: f64, gamma: f64, n: f64) -> Result<Self> {
        let beta = beta_from_r0(r0, gamma)?;
        check_population(n)?;
        Ok(EpiParams { r0, gamma, beta, n })
    }

    /// Parameters from a mean infectious period `gamma_inv` (days).
    pub fn from_infectious_period(r0: f64, gamma_inv: f64, n: f64) -> Result<Self> {
        if !(gamma_inv > 0.0) || !gamma_inv.is_finite() {
            return Err(Error::domain(format!("gamma_inv must be > 0, got {gamma_inv}")));
        }
        Self::new(r0, 1.0 / gamma_inv, n)
    }

    /// Parameters from a transmission rate, keeping `beta` bit-exact.
    pub fn from_rates(beta: f64, gamma: f64, n: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::domain(format!("gamma must be > 0, got {gamma}")));
        }
        if !(beta > 0.0) || !beta.is_finite() {
            return Err(Error::domain(format!("beta must be > 0, got {beta}")));
        }
        check_population(n)?;
        Ok(EpiParams { r0: beta / gamma, gamma, beta, n })
    }

    pub fn baseline() -> Self {
        Self::from_infectious_period(DEFAULT_R0, DEFAULT_GAMMA_INV, DEFAULT_N)
            .expect("baseline parameters are valid")
    }

    pub fn r0(&self) -> f64 {
        self.r0
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn gamma_inv(&self) -> f64 {
        1.0 / self.gamma
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    /// Distancing level above which `(1 - delta) * r0 < 1`.
    pub fn extinction_threshold(&self) -> f64 {
        (1.0 - 1.0 / self.r0).max(0.0)
    }
}

fn check_population(n: f64) -> Result<()> {
    if !(n > 0.0) || !n.is_finite() {
        return Err(Error::domain(format!("n must be > 0, got {n}")));
    }
    Ok(())
}

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::domain(format!("delta must lie in [0, 1], got {delta}")));
    }
    Ok(())
}

/// A fully specified run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Scenario {
    pub params: EpiParams,
    pub i0_fraction: f64,
    pub delta: f64,
    pub t0: f64,
    pub tf: f64,
    pub dt_internal: f64,
    pub dt_output: f64,
}

impl Scenario {
    /// Scenario with the default horizon and step sizes.
    pub fn new(params: EpiParams, i0_fraction: f64, delta: f64) -> Self {
        Scenario {
            params,
            i0_fraction,
            delta,
            t0: 0.0,
            tf: DEFAULT_TF,
            dt_internal: DEFAULT_DT_INTERNAL,
            dt_output: DEFAULT_DT_OUTPUT,
        }
    }

    /// R0 = 2.67, 1/gamma = 8.5 days, n = 10000, 0.1% seeded, no distancing.
    pub fn baseline() -> Self {
        Self::new(EpiParams::baseline(), DEFAULT_I0_FRACTION, 0.0)
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_horizon(mut self, t0: f64, tf: f64) -> Self {
        self.t0 = t0;
        self.tf = tf;
        self
    }

    pub fn with_steps(mut self, dt_internal: f64, dt_output: f64) -> Self {
        self.dt_internal = dt_internal;
        self.dt_output = dt_output;
        self
    }

    pub fn with_params(mut self, params: EpiParams) -> Self {
        self.params = params;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_delta(self.delta)?;
        if !(0.0..=1.0).contains(&self.i0_fraction) {
            return Err(Error::domain(format!(
                "i0_fraction must lie in [0, 1], got {}",
                self.i0_fraction
            )));
        }
        if !self.t0.is_finite() || !self.tf.is_finite() || !(self.t0 < self.tf) {
            return Err(Error::domain(format!(
                "require t0 < tf, got t0={} tf={}",
                self.t0, self.tf
            )));
        }
        if !(self.dt_internal > 0.0) || !(self.dt_internal <= self.dt_output) {
            return Err(Error::domain(format!(
                "require 0 < dt_internal <= dt_output, got {} and {}",
                self.dt_internal, self.dt_output
            )));
        }
        self.output_intervals()?;
        Ok(())
    }

    /// Number of output intervals between `t0` and `tf`.
    pub fn output_intervals(&self) -> Result<usize> {
        let span = self.tf - self.t0;
        let k = (span / self.dt_output).round();
        if k < 1.0 || (k * self.dt_output - span).abs() > 1e-9 * span {
            return Err(Error::domain(format!(
                "dt_output={} does not divide tf - t0 = {span}",
                self.dt_output
            )));
        }
        Ok(k as usize)
    }

    /// Output sample times `t0, t0 + dt_output, ..., tf`.
    pub fn output_times(&self) -> Result<Vec<f64>> {
        let k = self.output_intervals()?;
        Ok((0..=k).map(|j| self.time_at(j, k)).collect())
    }

    pub(crate) fn time_at(&self, j: usize, intervals: usize) -> f64 {
        if j == intervals {
            self.tf
        } else {
            self.t0 + j as f64 * self.dt_output
        }
    }

    /// Index of `t` on the output grid.
    pub fn output_index(&self, t: f64) -> Result<usize> {
        let k = self.output_intervals()?;
        let j = ((t - self.t0) / self.dt_output).round();
        if !(j >= 0.0) || j > k as f64 {
            return Err(Error::OffGrid { t });
        }
        let j = j as usize;
        let tol = 1e-9 * self.tf.abs().max(self.t0.abs()).max(1.0);
        if (self.time_at(j, k) - t).abs() > tol {
            return Err(Error::OffGrid { t });
        }
        Ok(j)
    }

    pub fn initial_state(&self) -> CompartmentState {
        let n = self.params.n();
        let i = n * self.i0_fraction;
        CompartmentState { t: self.t0, s: n - i, i, r: 0.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompartmentState {
    pub t: f64,
    pub s: f64,
    pub i: f64,
    pub r: f64,
}

impl CompartmentState {
    pub fn new(t: f64, s: f64, i: f64, r: f64) -> Self {
        CompartmentState { t, s, i, r }
    }

    pub fn get(&self, c: crate::Compartment) -> f64 {
        match c {
            crate::Compartment::S => self.s,
            crate::Compartment::I => self.i,
            crate::Compartment::R => self.r,
        }
    }

    pub fn total(&self) -> f64 {
        self.s + self.i + self.r
    }

    pub(crate) fn check_non_negative(&self) -> Result<()> {
        if self.s < 0.0 || self.i < 0.0 || self.r < 0.0 || !self.total().is_finite() {
            return Err(Error::domain(format!(
                "compartments must be finite and non-negative, got S={} I={} R={}",
                self.s, self.i, self.r
            )));
        }
        Ok(())
    }
}

/// Time derivatives of the three compartments, in individuals per day.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub ds_dt: f64,
    pub di_dt: f64,
    pub dr_dt: f64,
}

/// Right-hand side of the SIR system with the S to I flow scaled by `1 - delta`.
pub fn derivative(state: &CompartmentState, params: &EpiParams, delta: f64) -> Result<Derivative> {
    check_delta(delta)?;
    state.check_non_negative()?;
    let [ds_dt, di_dt, dr_dt] = rates(
        [state.s, state.i, state.r],
        (1.0 - delta) * params.beta(),
        params.gamma(),
        params.n(),
    );
    Ok(Derivative { ds_dt, di_dt, dr_dt })
}

// `beta_eff` is `(1 - delta) * beta`, formed once by the caller.
#[inline]
pub(crate) fn rates(y: [f64; 3], beta_eff: f64, gamma: f64, n: f64) -> [f64; 3] {
    let flow = beta_eff * y[0] * y[1] / n;
    let recovery = gamma * y[1];
    [-flow, flow - recovery, recovery]
}
