use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{LFunctionId, ZeroList, ZeroSource};
use crate::arith::FundamentalDiscriminant;
use crate::error::{Error, Result};
use crate::special::{l_complex, ln_gamma_complex, riemann_siegel_theta, zeta_complex, CharacterValues};

/// Initial grid step of the sign-change scan.
pub const SCAN_STEP: f64 = 0.05;
pub const MAX_ZETA_HEIGHT: f64 = 1000.0;
pub const MAX_L_HEIGHT: f64 = 200.0;
pub const MAX_L_CONDUCTOR: u64 = 100;

/// Grid intervals handled by one parallel work item.
const WINDOW: usize = 400;

/// Hardy's `Z(t) = e^{iθ(t)} ζ(1/2 + it)`, real for real `t`.
pub fn hardy_z(t: f64) -> f64 {
    let z = zeta_complex(Complex64::new(0.5, t));
    (Complex64::from_polar(1.0, riemann_siegel_theta(t)) * z).re
}

/// `θ_χ(t) = arg Γ((1/2 + κ + it)/2) + (t/2) log(q/π)`.
fn theta_chi(t: f64, q: u64, kappa: u8) -> f64 {
    let s = Complex64::new(0.25 + 0.5 * kappa as f64, 0.5 * t);
    ln_gamma_complex(s).im + 0.5 * t * (q as f64 / PI).ln()
}

/// `e^{iθ_χ(t)} L(1/2 + it, χ_d)`, real because `χ_d` is real with root number 1.
pub fn l_hardy_z(d: FundamentalDiscriminant, t: f64) -> f64 {
    let psi = CharacterValues::from_kronecker(d);
    l_hardy_z_with(&psi, d.conductor(), d.kappa(), t)
}

fn l_hardy_z_with(psi: &CharacterValues, q: u64, kappa: u8, t: f64) -> f64 {
    let l = l_complex(Complex64::new(0.5, t), psi);
    (Complex64::from_polar(1.0, theta_chi(t, q, kappa)) * l).re
}

/// Continuous change of `arg f(σ + iT)` as `σ` runs from 3 down to 1/2,
/// plus the principal argument at `σ = 3` (where `|f − 1| < 1`).
fn arg_on_horizontal(f: &dyn Fn(f64) -> Complex64) -> f64 {
    fn walk(f: &dyn Fn(f64) -> Complex64, a: f64, fa: Complex64, b: f64, fb: Complex64, depth: u32) -> f64 {
        let d = (fb / fa).arg();
        if d.abs() < PI / 8.0 || depth > 40 {
            return d;
        }
        let m = 0.5 * (a + b);
        let fm = f(m);
        walk(f, a, fa, m, fm, depth + 1) + walk(f, m, fm, b, fb, depth + 1)
    }
    let steps = 32;
    let mut total = f(3.0).arg();
    let mut a = 3.0;
    let mut fa = f(a);
    for k in 1..=steps {
        let b = 3.0 - 2.5 * k as f64 / steps as f64;
        let fb = f(b);
        total += walk(f, a, fa, b, fb, 0);
        a = b;
        fa = fb;
    }
    total
}

/// Number of zeros of ζ with `0 < γ <= T` by the argument principle,
/// `N(T) = θ(T)/π + 1 + arg ζ(1/2 + iT)/π`. `T` must not be an ordinate.
pub fn zeta_zero_count(t: f64) -> Result<u64> {
    if !(t > 0.0) {
        return Err(Error::precondition("count height must be positive"));
    }
    let arg = arg_on_horizontal(&|s| zeta_complex(Complex64::new(s, t)));
    let n = riemann_siegel_theta(t) / PI + 1.0 + arg / PI;
    round_count(n, t)
}

/// Number of zeros of `L(s, χ_d)` with `0 < γ <= T`, from
/// `N(T, χ) = (2/π)(θ_χ(T) + arg L(1/2 + iT, χ))` over both signs of `γ`.
pub fn l_zero_count(d: FundamentalDiscriminant, t: f64) -> Result<u64> {
    if !(t > 0.0) {
        return Err(Error::precondition("count height must be positive"));
    }
    let psi = CharacterValues::from_kronecker(d);
    let arg = arg_on_horizontal(&|s| l_complex(Complex64::new(s, t), &psi));
    let n = 2.0 / PI * (theta_chi(t, d.conductor(), d.kappa()) + arg);
    // L(1/2, χ_d) ≠ 0 for every d in range, so N(T, χ) is even
    round_count(n / 2.0, t)
}

fn round_count(n: f64, t: f64) -> Result<u64> {
    let r = n.round();
    if (n - r).abs() > 0.1 || r < 0.0 {
        return Err(Error::Consistency(format!(
            "argument-principle count {n:.4} at T = {t} is not near an integer"
        )));
    }
    Ok(r as u64)
}

/// Bisection of a sign change of `f` on `[a, b]`.
fn refine(f: &dyn Fn(f64) -> f64, mut a: f64, mut fa: f64, mut b: f64) -> f64 {
    while b - a > 1e-12 * b.max(1.0) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Sign changes of `f` on the grid `k·h`, `0 < k·h <= t_max`, refined.
fn scan_sign_changes(f: &(dyn Fn(f64) -> f64 + Sync), t_max: f64, h: f64) -> Vec<f64> {
    let n = (t_max / h).ceil() as usize;
    let grid = |k: usize| (k as f64 * h).min(t_max);
    let windows: Vec<usize> = (0..n).step_by(WINDOW).collect();
    let mut found: Vec<f64> = windows
        .par_iter()
        .flat_map_iter(|&start| {
            let end = (start + WINDOW).min(n);
            let mut out = Vec::new();
            let mut a = grid(start);
            let mut fa = f(a);
            for k in start + 1..=end {
                let b = grid(k);
                let fb = f(b);
                if fa == 0.0 && a > 0.0 {
                    out.push(a);
                } else if fa * fb < 0.0 {
                    out.push(refine(f, a, fa, b));
                }
                a = b;
                fa = fb;
            }
            out
        })
        .collect();
    found.sort_by(f64::total_cmp);
    found.dedup_by(|x, y| (*x - *y).abs() < 1e-9);
    found
}

/// Scans, audits the count against the argument principle and retries on a
/// finer grid if zeros were missed.
fn scan_audited(
    f: &(dyn Fn(f64) -> f64 + Sync),
    count: &dyn Fn(f64) -> Result<u64>,
    t_max: f64,
    name: &str,
) -> Result<Vec<f64>> {
    let expected = count(t_max)?;
    let mut h = SCAN_STEP;
    for _ in 0..3 {
        let found = scan_sign_changes(f, t_max, h);
        if found.len() as u64 == expected {
            return Ok(found);
        }
        h /= 4.0;
    }
    Err(Error::Consistency(format!(
        "suspected missed zeros of {name} below {t_max}: scan found fewer than the {expected} counted"
    )))
}

/// Keeps `T` away from an ordinate so that the count is well defined.
fn safe_height(f: &dyn Fn(f64) -> f64, t_max: f64) -> f64 {
    let mut t = t_max;
    while f(t).abs() < 1e-6 {
        t -= 1e-3;
    }
    t
}

/// All zeros of ζ with `0 < γ <= t_max`.
pub fn zeta_zero_scan(t_max: f64) -> Result<ZeroList> {
    if !(t_max > 0.0 && t_max <= MAX_ZETA_HEIGHT) {
        return Err(Error::precondition(format!(
            "zeta scan limited to 0 < t_max <= {MAX_ZETA_HEIGHT}, got {t_max}"
        )));
    }
    let t = safe_height(&hardy_z, t_max);
    let ordinates = scan_audited(&hardy_z, &zeta_zero_count, t, "zeta")?;
    Ok(ZeroList {
        id: LFunctionId::Zeta,
        ordinates,
        t_max: t,
        source: ZeroSource::Scanned,
    })
}

/// All zeros of `L(s, χ_d)` with `0 < γ <= t_max`.
pub fn l_zero_scan(d: FundamentalDiscriminant, t_max: f64) -> Result<ZeroList> {
    if d.conductor() > MAX_L_CONDUCTOR {
        return Err(Error::precondition(format!(
            "L scan limited to |d| <= {MAX_L_CONDUCTOR}, got d = {}",
            d.d()
        )));
    }
    if !(t_max > 0.0 && t_max <= MAX_L_HEIGHT) {
        return Err(Error::precondition(format!(
            "L scan limited to 0 < t_max <= {MAX_L_HEIGHT}, got {t_max}"
        )));
    }
    let psi = CharacterValues::from_kronecker(d);
    let (q, kappa) = (d.conductor(), d.kappa());
    let f = move |t: f64| l_hardy_z_with(&psi, q, kappa, t);
    let t = safe_height(&f, t_max);
    let name = format!("L(s, chi_{})", d.d());
    let ordinates = scan_audited(&f, &|t| l_zero_count(d, t), t, &name)?;
    let list = ZeroList {
        id: LFunctionId::Discriminant(d.d()),
        ordinates,
        t_max: t,
        source: ZeroSource::Scanned,
    };
    list.check_count()?;
    Ok(list)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zeta_zeros() {
        let z = zeta_zero_scan(100.0).unwrap();
        assert_eq!(z.len(), 29);
        assert!((z.ordinates[0] - 14.134725141734693).abs() < 1e-6);
        assert!((z.ordinates[1] - 21.022039638771554).abs() < 1e-6);
        assert!(z.ordinates[0] > 14.0);
        // Z has no sign change below 14
        assert!(scan_sign_changes(&hardy_z, 14.0, 0.01).is_empty());
        z.check_count().unwrap();
    }

    #[test]
    fn counts_by_argument_principle() {
        assert_eq!(zeta_zero_count(10.0).unwrap(), 0);
        assert_eq!(zeta_zero_count(15.0).unwrap(), 1);
        assert_eq!(zeta_zero_count(100.0).unwrap(), 29);
        let d = FundamentalDiscriminant::new(-4).unwrap();
        assert_eq!(l_zero_count(d, 5.0).unwrap(), 0);
        assert_eq!(l_zero_count(d, 7.0).unwrap(), 1);
    }

    #[test]
    fn low_real_character_zeros() {
        let d5 = FundamentalDiscriminant::new(5).unwrap();
        let z = l_zero_scan(d5, 20.0).unwrap();
        // lowest zero of L(s, χ_5): mpmath gives |L(1/2 + iγ)| < 1e-15 at 6.648453344727715
        assert!((z.ordinates[0] - 6.648453344727715).abs() < 1e-9, "{:?}", z.ordinates);
        for &g in &z.ordinates {
            let psi = CharacterValues::from_kronecker(d5);
            assert!(l_complex(Complex64::new(0.5, g), &psi).norm() < 1e-8);
        }
        let dm4 = FundamentalDiscriminant::new(-4).unwrap();
        let z = l_zero_scan(dm4, 10.0).unwrap();
        let b = super::super::bmor_bracket(10.0, 4, 1).unwrap();
        assert!(b.contains(2.0 * z.count_up_to(10.0) as f64));
        assert!((z.ordinates[0] - 6.020948904697).abs() < 1e-6);
    }

    #[test]
    fn scan_limits() {
        let d = FundamentalDiscriminant::new(101).unwrap();
        assert!(l_zero_scan(d, 10.0).is_err());
        assert!(zeta_zero_scan(1001.0).is_err());
    }
}
