//! Marginal utility of distancing, dI/d(delta), over the (delta, t) grid.
//!
//! ```bash
//! cargo run --release --example marginal_utility -- [h] [out.csv]
//! ```

use std::fs::File;

use distgame::output::write_field_csv;
use distgame::{utility_field, GridSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let h: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(0.01);
    let grid = GridSpec::baseline();
    let field = utility_field(&grid, h)?;

    let (rows, cols) = field.shape();
    let mut best = (0, 0);
    for i in 0..rows {
        for j in 0..cols {
            if field.get(i, j).abs() > field.get(best.0, best.1).abs() {
                best = (i, j);
            }
        }
    }
    println!(
        "largest |dI/d delta| = {:.1} at delta = {}, t = {} days",
        field.get(best.0, best.1).abs(),
        field.axis1_values[best.0],
        field.axis2_values[best.1]
    );
    let t20 = field.axis2_values.iter().position(|&t| t == 20.0).expect("t = 20 on grid");
    for (i, d) in field.axis1_values.iter().enumerate().step_by(2) {
        println!("  delta {d:>4.2}: dI/d delta at t=20 is {:>9.2}", field.get(i, t20));
    }

    if let Some(path) = args.next() {
        write_field_csv(&field, File::create(&path)?)?;
        println!("wrote {path}");
    }
    Ok(())
}
