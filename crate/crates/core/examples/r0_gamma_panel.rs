//! Undistanced trajectories over a grid of R0 and infectious periods, as in a
//! panel of small multiples. Prints attack rate and peak per cell.
//!
//! ```bash
//! cargo run --release --example r0_gamma_panel -- [grid.csv]
//! ```

use std::fs::File;

use distgame::output::write_grid_sweep_csv;
use distgame::{sweep_r0_gamma, GridSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = GridSpec::baseline();
    let trajs = sweep_r0_gamma(&grid)?;
    let n = grid.base.params.n();

    print!("{:>6}", "R0");
    for g in &grid.gamma_inv_values {
        print!("  1/g={g:<5}      ");
    }
    println!();
    for (row, r0) in trajs.chunks(grid.gamma_inv_values.len()).zip(&grid.r0_values) {
        print!("{r0:>6}");
        for traj in row {
            let peak = traj.peak();
            print!("  pk {:>4.2} @{:>5.1}d", peak.i / n, peak.t);
        }
        println!();
    }

    if let Some(path) = std::env::args().nth(1) {
        write_grid_sweep_csv(&trajs, File::create(&path)?)?;
        println!("wrote {path}");
    }
    Ok(())
}
