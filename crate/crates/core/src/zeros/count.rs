use std::f64::consts::{E, PI, TAU};

use serde::Serialize;

use crate::error::{Error, Result};

/// Bounds on `N(T)`, the number of nontrivial zeros with `|γ| <= T`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CountBracket {
    pub t: f64,
    pub lower: f64,
    pub upper: f64,
    /// `log(q(T+2)/2π)`; zero for ζ.
    pub ell: f64,
}

impl CountBracket {
    pub fn contains(&self, n: f64) -> bool {
        self.lower <= n && n <= self.upper
    }
}

/// Smallest `ℓ` for which the Dirichlet counting bound applies.
pub const MIN_ELL: f64 = 1.567;
/// Smallest height for which the Dirichlet counting bound applies.
pub const MIN_HEIGHT: f64 = 5.0 / 7.0;

/// `ℓ = log(q(T+2)/2π)`
pub fn ell(t: f64, q: u64) -> f64 {
    (q as f64 * (t + 2.0) / TAU).ln()
}

/// Half-width `0.22737ℓ + 2 log(1+ℓ) − 0.5` of the Dirichlet counting bracket.
pub fn bmor_radius(ell: f64) -> f64 {
    0.22737 * ell + 2.0 * (1.0 + ell).ln() - 0.5
}

fn check_dirichlet(t: f64, q: u64) -> Result<f64> {
    if q < 2 {
        return Err(Error::precondition(format!("counting bound needs conductor q > 1, got {q}")));
    }
    if !(t >= MIN_HEIGHT) {
        return Err(Error::precondition(format!("counting bound needs T >= 5/7, got T = {t}")));
    }
    let l = ell(t, q);
    if !(l > MIN_ELL) {
        return Err(Error::precondition(format!(
            "counting bound needs log(q(T+2)/2π) > 1.567, got {l:.6} at q = {q}, T = {t}"
        )));
    }
    Ok(l)
}

/// Explicit bracket for `N(T, χ)` with `χ` of conductor `q` and parity `κ`.
pub fn bmor_bracket(t: f64, q: u64, kappa: u8) -> Result<CountBracket> {
    let l = check_dirichlet(t, q)?;
    let sign = if kappa == 0 { 1.0 } else { -1.0 };
    let center = t / PI * (q as f64 * t / (TAU * E)).ln() - sign / 4.0;
    let r = bmor_radius(l);
    Ok(CountBracket {
        t,
        lower: (center - r).max(0.0),
        upper: center + r,
        ell: l,
    })
}

/// The parity-free lower estimate `T/π log(qT/2πe) − 1/4 − r(ℓ)`.
pub fn count_lower_estimate(t: f64, q: u64) -> Result<f64> {
    let l = check_dirichlet(t, q)?;
    Ok(t / PI * (q as f64 * t / (TAU * E)).ln() - 0.25 - bmor_radius(l))
}

/// Least non-negative even integer `>=` [`count_lower_estimate`].
pub fn n_tilde(t: f64, q: u64) -> Result<u64> {
    let g = count_lower_estimate(t, q)?;
    if g <= 0.0 {
        return Ok(0);
    }
    let k = (g / 2.0).ceil() as u64;
    Ok(2 * k)
}

/// Bracket for `N(T)` of ζ (both signs of `γ`, so twice the usual count),
/// valid for `T >= e`:
/// `|N⁺(T) − T/2π log(T/2πe) − 7/8| <= 0.112 log T + 0.278 log log T + 2.51 + 0.2/T`.
pub fn zeta_count_bracket(t: f64) -> Result<CountBracket> {
    if !(t >= E) {
        return Err(Error::precondition(format!("zeta counting bound needs T >= e, got {t}")));
    }
    let main = t / TAU * (t / (TAU * E)).ln() + 0.875;
    let r = 0.112 * t.ln() + 0.278 * t.ln().ln() + 2.51 + 0.2 / t;
    Ok(CountBracket {
        t,
        lower: 2.0 * (main - r).max(0.0),
        upper: 2.0 * (main + r),
        ell: 0.0,
    })
}

/// `T/2π log(T/2πe) + 7/8`, the smooth count of positive ζ ordinates.
pub fn zeta_main_count(t: f64) -> f64 {
    t / TAU * (t / (TAU * E)).ln() + 0.875
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preconditions() {
        let b = bmor_bracket(4.0, 7, 0).unwrap();
        assert!((b.ell - (42.0 / TAU).ln()).abs() < 1e-15);
        assert!((b.ell - 1.8997).abs() < 1e-4);
        assert!(matches!(bmor_bracket(0.5, 5, 0), Err(Error::Precondition(m)) if m.contains("5/7")));
        assert!(matches!(bmor_bracket(1.0, 3, 0), Err(Error::Precondition(m)) if m.contains("1.567")));
        assert!(bmor_bracket(4.0, 1, 0).is_err());
    }

    #[test]
    fn width_formula() {
        let l = (30.0 / TAU).ln();
        assert!((2.0 * bmor_radius(l) - 2.0 * (0.22737 * l + 2.0 * (1.0 + l).ln() - 0.5)).abs() < 1e-15);
        // ℓ = 1.5633 here, just below the range of validity
        assert!(bmor_bracket(4.0, 5, 0).is_err());
        let b = bmor_bracket(50.0, 5, 1).unwrap();
        let l = (5.0 * 52.0 / TAU).ln();
        assert!((b.upper - b.lower - 2.0 * (0.22737 * l + 2.0 * (1.0 + l).ln() - 0.5)).abs() < 1e-12);
        // parity shifts the centre by 1/2
        let c0 = bmor_bracket(50.0, 5, 0).unwrap();
        assert!((c0.upper - b.upper + 0.5).abs() < 1e-12);
    }

    #[test]
    fn n_tilde_even_and_monotone() {
        for q in [12u64, 100, 1201, 460_000] {
            let mut prev = 0;
            let mut t = 1.0;
            while t < 60.0 {
                if let Ok(n) = n_tilde(t, q) {
                    assert_eq!(n % 2, 0);
                    assert!(n >= prev, "q = {q}, t = {t}");
                    prev = n;
                }
                t += 0.25;
            }
        }
        assert_eq!(n_tilde(1.0, 20).unwrap(), 0);
    }

    #[test]
    fn zeta_bracket_contains_known_counts() {
        // 29 zeros up to 100, 649 up to 1000 (both confirmed by the scanner tests)
        assert!(zeta_count_bracket(100.0).unwrap().contains(58.0));
        assert!(zeta_count_bracket(1000.0).unwrap().contains(1298.0));
        assert!(zeta_count_bracket(2.0).is_err());
    }
}
