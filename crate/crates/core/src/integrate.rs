//! Fixed-step classical Runge-Kutta integration of the distancing-modified
//! SIR system.
//!
//! Each output interval `dt_output` is split into the smallest whole number
//! of equal internal steps no longer than `dt_internal`. Sample times are
//! computed from their index, never accumulated, so identical scenarios give
//! bit-identical trajectories.

use serde::Serialize;

use crate::error::{Compartment, Error, Result};
use crate::model::{rates, CompartmentState, Scenario};

/// Relative (to `n`) depth below zero that a compartment may reach before
/// integration aborts. Shallower negatives are clamped to zero on output.
pub const NEGATIVE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub scenario: Scenario,
    pub states: Vec<CompartmentState>,
}

impl Trajectory {
    pub fn initial(&self) -> &CompartmentState {
        &self.states[0]
    }

    pub fn last(&self) -> &CompartmentState {
        self.states.last().expect("trajectory has at least two samples")
    }

    /// Sample with the largest `I` (earliest on ties).
    pub fn peak(&self) -> &CompartmentState {
        let mut best = &self.states[0];
        for s in &self.states[1..] {
            if s.i > best.i {
                best = s;
            }
        }
        best
    }

    pub fn at(&self, t: f64) -> Result<&CompartmentState> {
        let j = self.scenario.output_index(t)?;
        Ok(&self.states[j])
    }

    pub fn series(&self, c: Compartment) -> Vec<f64> {
        self.states.iter().map(|s| s.get(c)).collect()
    }

    pub fn times(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.t).collect()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Number of internal RK4 substeps per output interval.
pub fn substeps(dt_internal: f64, dt_output: f64) -> usize {
    let ratio = dt_output / dt_internal;
    // Absorb representation error, e.g. 0.5 / 0.05 = 10.000000000000002.
    ((ratio - 1e-9 * ratio).ceil() as usize).max(1)
}

pub fn integrate(scenario: &Scenario) -> Result<Trajectory> {
    scenario.validate()?;
    let intervals = scenario.output_intervals()?;
    let params = &scenario.params;
    let n = params.n();
    let gamma = params.gamma();
    let beta_eff = (1.0 - scenario.delta) * params.beta();

    let m = substeps(scenario.dt_internal, scenario.dt_output);
    let h = scenario.dt_output / m as f64;
    let floor = -NEGATIVE_TOLERANCE * n;

    let init = scenario.initial_state();
    let mut y = [init.s, init.i, init.r];
    let mut states = Vec::with_capacity(intervals + 1);
    states.push(init);

    for j in 1..=intervals {
        let interval_start = scenario.time_at(j - 1, intervals);
        for k in 0..m {
            y = rk4_step(y, h, beta_eff, gamma, n);
            let t = interval_start + (k + 1) as f64 * h;
            for (c, &v) in Compartment::ALL.iter().zip(&y) {
                if !v.is_finite() {
                    return Err(Error::NonFinite { t, compartment: *c });
                }
                if v < floor {
                    return Err(Error::Integration { t, compartment: *c, value: v });
                }
            }
        }
        states.push(CompartmentState {
            t: scenario.time_at(j, intervals),
            s: y[0].max(0.0),
            i: y[1].max(0.0),
            r: y[2].max(0.0),
        });
    }

    Ok(Trajectory { scenario: *scenario, states })
}

#[inline]
fn rk4_step(y: [f64; 3], h: f64, beta_eff: f64, gamma: f64, n: f64) -> [f64; 3] {
    let f = |y: [f64; 3]| rates(y, beta_eff, gamma, n);
    let axpy = |a: f64, k: [f64; 3]| [y[0] + a * k[0], y[1] + a * k[1], y[2] + a * k[2]];

    let k1 = f(y);
    let k2 = f(axpy(0.5 * h, k1));
    let k3 = f(axpy(0.5 * h, k2));
    let k4 = f(axpy(h, k3));

    let mut out = y;
    for c in 0..3 {
        out[c] = y[c] + h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::EpiParams;

    #[test]
    fn substep_counts() {
        assert_eq!(substeps(0.05, 0.5), 10);
        assert_eq!(substeps(0.1, 0.5), 5);
        assert_eq!(substeps(0.025, 0.5), 20);
        assert_eq!(substeps(0.3, 0.5), 2);
        assert_eq!(substeps(0.5, 0.5), 1);
    }

    #[test]
    fn full_distancing_is_exponential_decay() {
        let s = Scenario::baseline().with_delta(1.0).with_horizon(0.0, 8.5);
        let traj = integrate(&s).unwrap();
        for st in &traj.states {
            assert_eq!(st.s, 9990.0);
        }
        let i_end = traj.last().i;
        assert!((i_end - 10.0 * (-1.0f64).exp()).abs() < 1e-3, "{i_end}");
        assert_eq!(traj.last().t, 8.5);
    }

    #[test]
    fn sample_times_and_count() {
        let traj = integrate(&Scenario::baseline()).unwrap();
        assert_eq!(traj.len(), 361);
        assert_eq!(traj.states[40].t, 20.0);
        assert_eq!(traj.last().t, 180.0);
        assert_eq!(traj.at(20.0).unwrap().t, 20.0);
    }

    #[test]
    fn baseline_peak_matches_closed_form() {
        let traj = integrate(&Scenario::baseline()).unwrap();
        let peak = traj.peak().i / 1e4;
        assert!((peak - 0.2580).abs() < 0.01, "{peak}");
    }

    #[test]
    fn invalid_scenario_is_rejected() {
        let s = Scenario::baseline().with_steps(0.05, 0.7);
        assert!(matches!(integrate(&s), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_seed_stays_at_rest() {
        let mut s = Scenario::baseline();
        s.i0_fraction = 0.0;
        let traj = integrate(&s).unwrap();
        assert!(traj.states.iter().all(|st| st.i == 0.0 && st.s == 1e4));
    }

    #[test]
    fn huge_step_is_reported_with_time_and_compartment() {
        // R0 = 200 with a 5-day step overshoots S below zero.
        let p = EpiParams::new(200.0, 1.0, 1e4).unwrap();
        let s = Scenario::new(p, 0.01, 0.0).with_horizon(0.0, 10.0).with_steps(5.0, 5.0);
        let err = integrate(&s).unwrap_err();
        assert!(err.is_numerical(), "{err:?}");
        match err {
            Error::Integration { t, .. } | Error::NonFinite { t, .. } => assert!(t > 0.0),
            other => panic!("unexpected {other:?}"),
        }
    }
}
