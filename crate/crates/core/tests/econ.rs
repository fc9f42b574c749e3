use distgame::output::{fmt_num, write_trajectory_csv};
use distgame::{
    cost_fraction, infection_risk, integrate, marginal_utility, marginal_utility_series,
    preferred_strategy, social_cost_at, step_costs, strategy_report, total_social_cost,
    CompartmentState, CostParams, EpiParams, Scenario, StrategyChoice,
};
use proptest::prelude::*;

fn state() -> impl Strategy<Value = (EpiParams, CompartmentState)> {
    (0.5f64..8.0, 2.0f64..15.0, 0.0f64..1.0, 0.0f64..1.0).prop_map(|(r0, gi, a, b)| {
        let n = 1e4;
        let s = a * n;
        let i = b * (n - s);
        (EpiParams::from_infectious_period(r0, gi, n).unwrap(), CompartmentState::new(0.0, s, i, n - s - i))
    })
}

fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()) || a == b
}

proptest! {
    #[test]
    fn phi_times_odds_is_risk((p, st) in state(), delta in 1e-6f64..(1.0 - 1e-6)) {
        let phi = cost_fraction(&st, delta, &p).unwrap().to_f64();
        let back = phi * delta / (1.0 - delta);
        prop_assert!(rel_close(back, infection_risk(&st, &p), 1e-12));
    }

    #[test]
    fn phi_strictly_decreasing_in_delta((p, st) in state(), d1 in 0.001f64..0.999, d2 in 0.001f64..0.999) {
        prop_assume!(st.s > 0.0 && st.i > 0.0 && d1 != d2);
        let (lo, hi) = if d1 < d2 { (d1, d2) } else { (d2, d1) };
        let a = cost_fraction(&st, lo, &p).unwrap().to_f64();
        let b = cost_fraction(&st, hi, &p).unwrap().to_f64();
        prop_assert!(b < a);
    }

    #[test]
    fn social_cost_consistent_with_step_costs(
        (p, st) in state(), delta in 0.0f64..=1.0, c_d in 0.0f64..100.0, c_i in 0.0f64..5000.0,
    ) {
        let c = CostParams::new(c_d, c_i).unwrap();
        let sc = step_costs(&st, &p, &c);
        let expected = delta * p.n() * sc.j_distance + (1.0 - delta) * p.n() * sc.j_not;
        prop_assert!(rel_close(social_cost_at(&st, delta, &p, &c).unwrap(), expected, 1e-12));
    }

    #[test]
    fn dominance_coherence((p, st) in state(), c_d in 0.0f64..1.0, c_i in 1e-3f64..5000.0) {
        let c = CostParams::new(c_d, c_i).unwrap();
        let choice = preferred_strategy(&st, &p, &c);
        let r = infection_risk(&st, &p);
        // Away from the tie band the two formulations must agree.
        prop_assume!((c_d - r * c_i).abs() > 1e-9 * c_d.max(r * c_i));
        prop_assert_eq!(choice == StrategyChoice::Distance, c_d / c_i < r);
    }
}

#[test]
fn total_cost_is_affine_in_each_cost() {
    let traj = integrate(&Scenario::baseline().with_delta(0.3)).unwrap();
    let tc = |c_d, c_i| total_social_cost(&traj, &CostParams::new(c_d, c_i).unwrap(), 1.0).unwrap();
    let (a, b, c) = (tc(1.0, 100.0), tc(2.0, 100.0), tc(3.0, 100.0));
    assert!(rel_close(b - a, c - b, 1e-9));
    let (a, b, c) = (tc(1.0, 100.0), tc(1.0, 200.0), tc(1.0, 300.0));
    assert!(rel_close(b - a, c - b, 1e-9));
    assert!(rel_close(tc(0.0, 100.0) + tc(1.0, 0.0), tc(1.0, 100.0), 1e-12));
}

#[test]
fn total_cost_matches_csv_resummation_and_reference() {
    let traj = integrate(&Scenario::baseline().with_delta(0.3)).unwrap();
    let costs = CostParams::new(1.0, 100.0).unwrap();
    let total = total_social_cost(&traj, &costs, 1.0).unwrap();

    // Independent summation over the serialized trajectory.
    let mut csv = Vec::new();
    write_trajectory_csv(&traj, &mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    let (beta, n) = (2.67 / 8.5, 1e4);
    let mut resum = 0.0;
    for line in text.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
        let (t, s, i) = (v[0], v[1], v[2]);
        if t < 180.0 && t.fract() == 0.0 {
            resum += n * (0.3 * 1.0 + 0.7 * beta * s * i / (n * n) * 100.0);
        }
    }
    assert!(rel_close(total, resum, 1e-7), "{total} vs {resum}");

    // scipy DOP853 (rtol 1e-13) trajectory summed the same way.
    assert!(rel_close(total, 1_296_427.243_937_536_8, 1e-6), "{total}");
}

#[test]
fn marginal_utility_baseline_golden() {
    let s = Scenario::baseline().with_delta(0.1);
    let coarse = marginal_utility(&s, 20.0, 0.01).unwrap();
    let fine = marginal_utility(&s, 20.0, 0.005).unwrap();
    assert!(coarse < 0.0 && fine < 0.0);
    // Central differences of a scipy DOP853 reference at the same steps.
    assert!(rel_close(coarse, -1_498.462_734_528_310_2, 1e-5), "{coarse}");
    assert!(rel_close(fine, -1_497.942_129_639_238_8, 1e-5), "{fine}");
    // Second order: the h -> h/2 change predicts the remaining error.
    let richardson = fine + (fine - coarse) / 3.0;
    assert!((richardson - fine).abs() < 0.5 * (coarse - fine).abs());
}

#[test]
fn marginal_utility_negative_before_undistanced_peak() {
    let base = Scenario::baseline();
    let peak_t = integrate(&base).unwrap().peak().t;
    let peak_j = base.output_index(peak_t).unwrap();
    for k in 1..=19 {
        let delta = k as f64 * 0.05;
        let mu = marginal_utility_series(&base.with_delta(delta), 0.01).unwrap();
        for (j, v) in mu[..=peak_j].iter().enumerate() {
            assert!(*v <= 1e-9 * 1e4, "delta={delta} j={j} mu={v}");
        }
    }
}

#[test]
fn marginal_utility_one_sided_edges_are_finite() {
    for delta in [0.0, 0.005, 0.995, 1.0] {
        let mu = marginal_utility_series(&Scenario::baseline().with_delta(delta), 0.01).unwrap();
        assert!(mu.iter().all(|v| v.is_finite()));
        assert_eq!(mu[0], 0.0);
    }
}

#[test]
fn strategy_report_rows() {
    let traj = integrate(&Scenario::baseline().with_delta(0.2)).unwrap();
    let rows = strategy_report(&traj, &CostParams::new(1.0, 3045.0).unwrap()).unwrap();
    assert_eq!(rows.len(), traj.len());
    assert!(rows.iter().all(|r| r.j_distance == 1.0));
    // Early on the risk is tiny: not distancing is cheaper.
    assert_eq!(rows[0].preferred, StrategyChoice::NotDistance);
    assert!(rows.iter().any(|r| r.preferred == StrategyChoice::Distance));
    assert_eq!(fmt_num(rows[0].t), "0");
}
