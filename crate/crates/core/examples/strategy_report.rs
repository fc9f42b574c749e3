//! Instantaneous cost comparison between distancing and not distancing along
//! one trajectory.
//!
//! ```bash
//! cargo run --example strategy_report -- [delta] [c_d] [c_i]
//! ```

use distgame::{integrate, strategy_report, CostParams, Scenario, StrategyChoice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let delta = args.first().copied().unwrap_or(0.2);
    let costs = CostParams::new(args.get(1).copied().unwrap_or(1.0), args.get(2).copied().unwrap_or(3045.0))?;

    let traj = integrate(&Scenario::baseline().with_delta(delta))?;
    let rows = strategy_report(&traj, &costs)?;

    let distancing: Vec<_> = rows.iter().filter(|r| r.preferred == StrategyChoice::Distance).collect();
    println!("delta = {delta}, c_d = {}, c_i = {}", costs.c_d, costs.c_i);
    match (distancing.first(), distancing.last()) {
        (Some(a), Some(b)) => println!(
            "distancing preferred on {} samples, from t = {} to t = {}",
            distancing.len(),
            a.t,
            b.t
        ),
        _ => println!("distancing is never preferred"),
    }
    for r in rows.iter().step_by(40) {
        println!(
            "t={:>6.1}  r_i={:.6}  J_d={:>8.3}  J_not={:>8.3}  {}",
            r.t,
            r.r_i,
            r.j_distance,
            r.j_not,
            r.preferred.as_str()
        );
    }
    Ok(())
}
