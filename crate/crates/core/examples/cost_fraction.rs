//! Break-even cost fraction c_d / c_i over (delta, t). The delta = 0 row is
//! unbounded and serialized as `inf`.
//!
//! ```bash
//! cargo run --release --example cost_fraction -- [out.csv]
//! ```

use std::fs::File;

use distgame::output::write_field_csv;
use distgame::{cost_fraction_field, GridSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = GridSpec::baseline();
    let field = cost_fraction_field(&grid)?;

    println!("{:>6} {:>12} {:>22}", "delta", "max phi", "days with phi >= 0.05");
    for (i, d) in field.axis1_values.iter().enumerate() {
        let row = field.row(i);
        let max = row.iter().cloned().fold(0.0, f64::max);
        let days = row.iter().filter(|&&v| v >= 0.05).count() as f64 * grid.base.dt_output;
        println!("{d:>6.2} {max:>12.5} {days:>22.1}");
    }

    if let Some(path) = std::env::args().nth(1) {
        write_field_csv(&field, File::create(&path)?)?;
        println!("wrote {path}");
    }
    Ok(())
}
