use num_complex::Complex64;

use crate::error::{Error, Result};

use super::gamma::ln_gamma_complex;
use super::hurwitz::{progression_sum, progression_sum_complex, progression_sum_plain};

fn check(s: f64) -> Result<()> {
    if !(s > 1.0) {
        return Err(Error::precondition(format!("zeta: need s > 1, got {s}")));
    }
    Ok(())
}

/// Riemann zeta for real `s > 1`.
pub fn zeta(s: f64) -> Result<f64> {
    check(s)?;
    if s >= 1.5 {
        return Ok(progression_sum_plain(s, 1.0, 1.0).0);
    }
    Ok(progression_sum(s, 1.0, 1.0).0 + 1.0 / (s - 1.0))
}

/// `ζ(s) − 1`, accurate for large `s` where `ζ(s)` rounds to 1.
pub fn zeta_minus_one(s: f64) -> Result<f64> {
    check(s)?;
    if s >= 1.5 {
        return Ok(progression_sum_plain(s, 2.0, 1.0).0);
    }
    Ok(progression_sum(s, 2.0, 1.0).0 + 1.0 / (s - 1.0))
}

pub fn zeta_prime(s: f64) -> Result<f64> {
    check(s)?;
    if s >= 1.5 {
        return Ok(progression_sum_plain(s, 1.0, 1.0).1);
    }
    let inv = 1.0 / (s - 1.0);
    Ok(progression_sum(s, 1.0, 1.0).1 - inv * inv)
}

/// `ζ'(s)/ζ(s)`.
pub fn zeta_logderiv(s: f64) -> Result<f64> {
    Ok(zeta_prime(s)? / zeta(s)?)
}

/// `ζ(s)` for complex `s ≠ 1`, `Re s > 0`.
pub fn zeta_complex(s: Complex64) -> Complex64 {
    progression_sum_complex(s, 1.0, 1.0)
}

/// `θ(t) = arg Γ(1/4 + it/2) − (t/2) log π`, so that `e^{iθ(t)} ζ(1/2+it)` is real.
pub fn riemann_siegel_theta(t: f64) -> f64 {
    ln_gamma_complex(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * std::f64::consts::PI.ln()
}
