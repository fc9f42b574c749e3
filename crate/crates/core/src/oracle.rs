//! Closed-form and root-finding references for the plain SIR system.
//!
//! Nothing here touches the integrator; these are the independent checks it
//! is verified against. All quantities are fractions of the population.

use crate::error::{Error, Result};

pub const FINAL_SIZE_TOLERANCE: f64 = 1e-10;

/// Limiting susceptible fraction: the root in `(0, s0]` of
/// `s = s0 * exp(-r0_eff * (1 - s))`, found by bisection.
///
/// The residual is concave in `s`, negative at 0 and non-negative at `s0`,
/// so the bracket holds exactly one root.
pub fn final_size_oracle(r0_eff: f64, s0_fraction: f64, i0_fraction: f64) -> Result<f64> {
    if !(r0_eff > 0.0) || !r0_eff.is_finite() {
        return Err(Error::domain(format!("r0_eff must be > 0, got {r0_eff}")));
    }
    if !(i0_fraction >= 0.0) || s0_fraction + i0_fraction > 1.0 + 1e-12 {
        return Err(Error::domain(format!(
            "require i0 >= 0 and s0 + i0 <= 1, got s0={s0_fraction} i0={i0_fraction}"
        )));
    }
    let residual = |s: f64| s - s0_fraction * (-r0_eff * (1.0 - s)).exp();

    let (mut lo, mut hi) = (0.0, s0_fraction);
    let (f_lo, f_hi) = (residual(lo), residual(hi));
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if !(f_lo < 0.0 && f_hi > 0.0) {
        return Err(Error::NoBracket { lo, hi });
    }
    while hi - lo > FINAL_SIZE_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if residual(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Peak infectious fraction from the conserved quantity
/// `s + i - ln(s) / r0_eff`. Subcritical starts (`r0_eff * s0 <= 1`) never
/// rise above `i0`.
pub fn peak_prevalence_analytic(r0_eff: f64, s0_fraction: f64, i0_fraction: f64) -> Result<f64> {
    if !(r0_eff > 0.0) || !r0_eff.is_finite() {
        return Err(Error::domain(format!("r0_eff must be > 0, got {r0_eff}")));
    }
    if !(s0_fraction > 0.0) || !(i0_fraction >= 0.0) {
        return Err(Error::domain(format!(
            "require s0 > 0 and i0 >= 0, got s0={s0_fraction} i0={i0_fraction}"
        )));
    }
    let growth = r0_eff * s0_fraction;
    if growth <= 1.0 {
        return Ok(i0_fraction);
    }
    Ok(i0_fraction + s0_fraction - (1.0 + growth.ln()) / r0_eff)
}
