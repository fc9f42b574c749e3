//! S, I and R as functions of distancing level and time.
//!
//! ```bash
//! cargo run --release --example compartments_by_delta -- [out_dir]
//! ```

use std::fs::File;
use std::path::PathBuf;

use distgame::output::write_field_csv;
use distgame::{field_by_delta, Compartment, GridSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let grid = GridSpec::baseline();
    let out_dir = std::env::args().nth(1).map(PathBuf::from);

    let infected = field_by_delta(&grid, Compartment::I)?;
    println!("{:>6} {:>10} {:>8}", "delta", "peak I", "peak t");
    for (i, d) in infected.axis1_values.iter().enumerate() {
        let (j, peak) = infected
            .row(i)
            .iter()
            .enumerate()
            .fold((0, f64::MIN), |best, (j, &v)| if v > best.1 { (j, v) } else { best });
        println!("{d:>6.2} {peak:>10.1} {:>8.1}", infected.axis2_values[j]);
    }

    if let Some(dir) = out_dir {
        std::fs::create_dir_all(&dir)?;
        for c in Compartment::ALL {
            let field = field_by_delta(&grid, c)?;
            let path = dir.join(format!("field_{c}.csv"));
            write_field_csv(&field, File::create(&path)?)?;
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}
