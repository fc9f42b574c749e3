//! Total social cost over the horizon as a function of distancing level.
//!
//! ```bash
//! cargo run --release --example total_cost -- [c_d] [c_i]
//! ```

use distgame::sweep::default_delta_values;
use distgame::{integrate, total_social_cost, CostParams, Scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    let costs = CostParams::new(args.first().copied().unwrap_or(1.0), args.get(1).copied().unwrap_or(100.0))?;

    let mut best = (f64::NAN, f64::INFINITY);
    println!("c_d = {}, c_i = {}, 180 days, dt_cost = 1 day", costs.c_d, costs.c_i);
    for delta in default_delta_values() {
        let traj = integrate(&Scenario::baseline().with_delta(delta))?;
        let total = total_social_cost(&traj, &costs, 1.0)?;
        println!("  delta {delta:>4.2}: {total:>14.1}");
        if total < best.1 {
            best = (delta, total);
        }
    }
    println!("cheapest constant delta: {} ({:.1})", best.0, best.1);
    Ok(())
}
