//! Integrate the baseline epidemic and compare it with the closed-form peak
//! and final-size references.
//!
//! ```bash
//! cargo run --example baseline_trajectory -- [delta] [out.csv]
//! ```

use std::fs::File;

use distgame::output::write_trajectory_csv;
use distgame::{final_size_oracle, integrate, peak_prevalence_analytic, Scenario};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let delta: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0.0);
    let out = args.next();

    let scenario = Scenario::baseline().with_delta(delta).with_horizon(0.0, 365.0);
    let traj = integrate(&scenario)?;
    let n = scenario.params.n();
    let r_eff = (1.0 - delta) * scenario.params.r0();

    let peak = traj.peak();
    println!("R0 = {}, 1/gamma = {} days, delta = {delta}", scenario.params.r0(), scenario.params.gamma_inv());
    println!(
        "peak I = {:.1} ({:.4} of n) at t = {} days; closed form {:.4}",
        peak.i,
        peak.i / n,
        peak.t,
        peak_prevalence_analytic(r_eff, 0.999, 0.001)?
    );
    println!(
        "S(365) = {:.1} ({:.4} of n); final-size root {:.4}",
        traj.last().s,
        traj.last().s / n,
        final_size_oracle(r_eff, 0.999, 0.001)?
    );

    if let Some(path) = out {
        write_trajectory_csv(&traj, File::create(&path)?)?;
        println!("wrote {path}");
    }
    Ok(())
}
