use serde::Serialize;

use super::count::{bmor_bracket, count_lower_estimate, zeta_count_bracket, CountBracket};
use crate::bracket::BracketedValue;
use crate::error::{Error, Result};
use crate::quad::integrate_to_infinity;

/// Weight attached to a zero `ρ = 1/2 + iγ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Weight {
    /// `1/|ρ|² = 1/(1/4 + γ²)`
    W1,
    /// `1/|ρ(ρ+1)| = 1/√((1/4+γ²)(9/4+γ²))`
    W2,
}

impl Weight {
    pub fn at(self, t: f64) -> f64 {
        let a = 0.25 + t * t;
        match self {
            Weight::W1 => 1.0 / a,
            Weight::W2 => 1.0 / (a * (2.25 + t * t)).sqrt(),
        }
    }

    /// `−w'(t)`
    pub fn neg_derivative(self, t: f64) -> f64 {
        let a = 0.25 + t * t;
        match self {
            Weight::W1 => 2.0 * t / (a * a),
            Weight::W2 => {
                let b = 2.25 + t * t;
                t * (a + b) / (a * b).powf(1.5)
            }
        }
    }
}

/// Which explicit zero-counting bound to integrate against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountModel {
    Zeta,
    Dirichlet { conductor: u64, kappa: u8 },
}

impl CountModel {
    pub fn bracket(self, t: f64) -> Result<CountBracket> {
        match self {
            CountModel::Zeta => zeta_count_bracket(t),
            CountModel::Dirichlet { conductor, kappa } => bmor_bracket(t, conductor, kappa),
        }
    }

    fn provenance(self) -> &'static str {
        match self {
            CountModel::Zeta => "zeta zero-counting bound",
            CountModel::Dirichlet { .. } => "Dirichlet zero-counting bound",
        }
    }
}

/// Bracket for `Σ_{|γ|>T} w(γ)` over all zeros of one L-function.
///
/// `known` is the exact number of zeros with `|γ| <= T` (both signs). By
/// Stieltjes integration, the tail equals `−w(T)·known + ∫_T^∞ N(t)(−w'(t)) dt`
/// and `−w' > 0`, so substituting the counting bracket (and `N(t) >= known`)
/// brackets the tail.
pub fn tail_bracket(t: f64, known: f64, model: CountModel, weight: Weight) -> Result<BracketedValue> {
    // the bracket is needed at every height above T; ℓ grows with t
    model.bracket(t)?;
    let upper_count = |s: f64| model.bracket(s).map(|b| b.upper).unwrap_or(f64::INFINITY);
    let lower_count = |s: f64| model.bracket(s).map(|b| b.lower).unwrap_or(0.0).max(known);
    let base = -weight.at(t) * known;
    let hi = integrate_to_infinity(|s| upper_count(s) * weight.neg_derivative(s), t, 80.0);
    let lo = split_integral(t, known, &lower_count, weight);
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(Error::Consistency(format!("tail integral diverged at T = {t}")));
    }
    // quadrature on smooth integrands is good to ~1e-13 relative
    let slack = 1e-12 * (hi.abs() + lo.abs()) + 1e-15;
    Ok(BracketedValue::new(
        base + lo - slack,
        base + hi + slack,
        model.provenance(),
    ))
}

/// `∫_T^∞ max(known, lower(t)) (−w'(t)) dt`, split where `lower` overtakes
/// `known` so that each piece is smooth.
fn split_integral(t: f64, known: f64, lower: &dyn Fn(f64) -> f64, weight: Weight) -> f64 {
    // lower(t) − known changes sign at most once for these bounds at t >= T
    let mut hi = t.max(1.0);
    while lower(hi) <= known && hi < 1e12 {
        hi *= 2.0;
    }
    let mut lo = t;
    if lower(lo) > known {
        return integrate_to_infinity(|s| lower(s) * weight.neg_derivative(s), t, 80.0);
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if lower(mid) > known {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let cross = hi;
    known * (weight.at(t) - weight.at(cross))
        + integrate_to_infinity(|s| lower(s) * weight.neg_derivative(s), cross, 80.0)
}

/// Lower bound for `Σ_γ 2/(1/4+γ²)` (the real-character bias sum) using only
/// the counting estimate from height `T` on: `N(t)` is at least the running
/// maximum of the even-rounded estimate, which is a non-decreasing step
/// function, and each step of size `k` at `τ` contributes `k/(1/4+τ²)`.
///
/// Steps are located one by one on `[T, t_end]`; beyond `t_end` the step
/// function is bounded below by the estimate itself.
pub fn tilde_tail_lower_bound(t: f64, conductor: u64, t_end: f64) -> Result<f64> {
    let g = |s: f64| count_lower_estimate(s, conductor);
    let even_ceil = |v: f64| if v <= 0.0 { 0.0 } else { 2.0 * (v / 2.0).ceil() };
    let w = |s: f64| 1.0 / (0.25 + s * s);
    let mut level = even_ceil(g(t)?);
    let mut total = level * w(t);
    let step = 0.02;
    let mut a = t;
    while a < t_end {
        let b = (a + step).min(t_end);
        let nb = even_ceil(g(b)?);
        if nb > level {
            // earliest point in (a, b] found by bisection where the estimate reaches nb
            let (mut lo, mut hi) = (a, b);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if even_ceil(g(mid)?) >= nb {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            total += (nb - level) * w(hi);
            level = nb;
        }
        a = b;
    }
    let rest = integrate_to_infinity(
        |s| (g(s).map(even_ceil).unwrap_or(level) - level).max(0.0) * Weight::W1.neg_derivative(s),
        t_end,
        80.0,
    );
    Ok(total + rest)
}

/// `n(q) ∫_T^∞ 2t·g(t)/(1/4+t²)² dt` with `g` the parity-free lower estimate of
/// the zero count, used to exclude large moduli.
pub fn count_estimate_integral(t: f64, conductor: u64) -> Result<f64> {
    count_lower_estimate(t, conductor)?;
    Ok(integrate_to_infinity(
        |s| count_lower_estimate(s, conductor).unwrap_or(0.0) * Weight::W1.neg_derivative(s),
        t,
        80.0,
    ))
}
