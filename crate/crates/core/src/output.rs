//! CSV serialization with locale-independent, 9-significant-digit numbers.

use std::io::{self, Write};

use crate::econ::StrategyRow;
use crate::integrate::Trajectory;
use crate::sweep::FieldResult;

pub const SIGNIFICANT_DIGITS: usize = 9;

pub const TRAJECTORY_HEADER: &str = "t,S,I,R";
pub const GRID_SWEEP_HEADER: &str = "r0,gamma_inv,t,S,I,R";
pub const STRATEGY_HEADER: &str = "t,r_i,j_distance,j_not,preferred";

/// Formats like C's `%.9g`: 9 significant digits, trailing zeros dropped,
/// exponent notation outside `[1e-4, 1e9)`. Infinities print as `inf`/`-inf`.
pub fn fmt_num(x: f64) -> String {
    const P: i32 = SIGNIFICANT_DIGITS as i32;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    // Rounding to P digits first fixes the decimal exponent.
    let sci = format!("{:.*e}", (P - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..P).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (P - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_trajectory_csv<W: Write>(traj: &Trajectory, mut w: W) -> io::Result<()> {
    writeln!(w, "{TRAJECTORY_HEADER}")?;
    for s in &traj.states {
        writeln!(w, "{},{},{},{}", fmt_num(s.t), fmt_num(s.s), fmt_num(s.i), fmt_num(s.r))?;
    }
    Ok(())
}

/// Header `<axis1>,<axis2>,value`, rows in row-major axis order.
pub fn write_field_csv<W: Write>(field: &FieldResult, mut w: W) -> io::Result<()> {
    writeln!(w, "{},{},value", field.axis1_name, field.axis2_name)?;
    for (i, a) in field.axis1_values.iter().enumerate() {
        let a = fmt_num(*a);
        for (b, v) in field.axis2_values.iter().zip(field.row(i)) {
            writeln!(w, "{a},{},{}", fmt_num(*b), fmt_num(*v))?;
        }
    }
    Ok(())
}

pub fn write_grid_sweep_csv<W: Write>(trajs: &[Trajectory], mut w: W) -> io::Result<()> {
    writeln!(w, "{GRID_SWEEP_HEADER}")?;
    for traj in trajs {
        let p = &traj.scenario.params;
        let (r0, g) = (fmt_num(p.r0()), fmt_num(p.gamma_inv()));
        for s in &traj.states {
            writeln!(
                w,
                "{r0},{g},{},{},{},{}",
                fmt_num(s.t),
                fmt_num(s.s),
                fmt_num(s.i),
                fmt_num(s.r)
            )?;
        }
    }
    Ok(())
}

pub fn write_strategy_csv<W: Write>(rows: &[StrategyRow], mut w: W) -> io::Result<()> {
    writeln!(w, "{STRATEGY_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt_num(r.t),
            fmt_num(r.r_i),
            fmt_num(r.j_distance),
            fmt_num(r.j_not),
            r.preferred.as_str()
        )?;
    }
    Ok(())
}
