//! Euler–Maclaurin evaluation of `Σ_{n≥0} (a + nq)^{−s}`.
//!
//! The real-`s` kernel returns the sum with its pole `1/(q(s−1))` removed,
//! together with the `s`-derivative, so that character sums with
//! `Σ χ(a) = 0` can be taken directly at `s = 1`.

use num_complex::Complex64;

use crate::error::{Error, Result};

use super::BERNOULLI_2K;

const EM_TERMS: usize = 12;

/// `B_{2k} / (2k)!` for `k = 1..=EM_TERMS`.
fn em_coefficients() -> [f64; EM_TERMS] {
    let mut out = [0.0; EM_TERMS];
    let mut fact = 1.0;
    for k in 1..=EM_TERMS {
        fact *= ((2 * k - 1) * (2 * k)) as f64;
        out[k - 1] = BERNOULLI_2K[k - 1] / fact;
    }
    out
}

/// `expm1(u)/u` and its derivative.
fn g_and_derivative(u: f64) -> (f64, f64) {
    if u.abs() < 1.0 {
        // Σ uⁿ/(n+1)!  and  Σ n u^{n−1}/(n+1)!
        let mut g = 0.0;
        let mut dg = 0.0;
        let mut fact = 1.0; // (n+1)!
        let mut pow = 1.0; // uⁿ
        for n in 0..25 {
            fact *= (n + 1) as f64;
            g += pow / fact;
            if n + 1 < 25 {
                dg += (n + 1) as f64 * pow / (fact * (n + 2) as f64);
            }
            pow *= u;
        }
        (g, dg)
    } else {
        let em1 = u.exp_m1();
        let g = em1 / u;
        let dg = (u * u.exp() - em1) / (u * u);
        (g, dg)
    }
}

fn terms_for(s_abs: f64) -> usize {
    // keeps the Bernoulli tail ratio (|s| + 2k)² / (2πN)² below 1/4
    (((s_abs + 2.0 * EM_TERMS as f64) / std::f64::consts::PI).ceil() as usize + 2).max(8)
}

/// `R(s) = Σ_{n≥0} (a+nq)^{−s} − 1/(q(s−1))` and `R'(s)`, real `s`, `a, q > 0`.
pub(crate) fn progression_sum(s: f64, a: f64, q: f64) -> (f64, f64) {
    em_real(s, a, q, true)
}

/// `Σ_{n≥0} (a+nq)^{−s}` and its derivative for real `s > 1`, without the
/// pole subtraction. Preferred away from `s = 1`, where subtracting the pole
/// would cancel most of the digits of a small result.
pub(crate) fn progression_sum_plain(s: f64, a: f64, q: f64) -> (f64, f64) {
    debug_assert!(s > 1.0);
    em_real(s, a, q, false)
}

fn em_real(s: f64, a: f64, q: f64, regularised: bool) -> (f64, f64) {
    let n_direct = terms_for(s.abs());
    let mut v = 0.0;
    let mut dv = 0.0;
    for n in 0..n_direct {
        let m = a + n as f64 * q;
        let lm = m.ln();
        let t = (-s * lm).exp();
        v += t;
        dv -= lm * t;
    }
    let m = a + n_direct as f64 * q;
    let lm = m.ln();
    let m_s = (-s * lm).exp();
    if regularised {
        // (M^{1−s} − 1)/(q(s−1)) = −(log M / q) g((1−s) log M)
        let (g, dg) = g_and_derivative((1.0 - s) * lm);
        v += -lm / q * g;
        dv += lm * lm / q * dg;
    } else {
        let t = m_s * m / (q * (s - 1.0));
        v += t;
        dv -= t * (lm + 1.0 / (s - 1.0));
    }
    v += 0.5 * m_s;
    dv -= 0.5 * lm * m_s;
    let ratio = q / m;
    let ratio2 = ratio * ratio;
    let mut w = m_s * ratio; // M^{−s} (q/M)^{2k−1}
    let mut p = s; // s(s+1)…(s+2k−2)
    let mut dp = 1.0;
    for (k, c) in em_coefficients().iter().enumerate() {
        v += c * p * w;
        dv += c * (dp - lm * p) * w;
        let j = (2 * k + 1) as f64;
        dp = dp * (s + j) + p;
        p *= s + j;
        dp = dp * (s + j + 1.0) + p;
        p *= s + j + 1.0;
        w *= ratio2;
    }
    (v, dv)
}

/// `Σ_{n≥0} (a+nq)^{−s}` for complex `s ≠ 1`.
pub(crate) fn progression_sum_complex(s: Complex64, a: f64, q: f64) -> Complex64 {
    let n_direct = terms_for(s.norm());
    let mut v = Complex64::new(0.0, 0.0);
    for n in 0..n_direct {
        let m = a + n as f64 * q;
        v += (-s * m.ln()).exp();
    }
    let m = a + n_direct as f64 * q;
    let lm = m.ln();
    let m_s = (-s * lm).exp();
    v += m_s * m / (q * (s - 1.0));
    v += 0.5 * m_s;
    let ratio = q / m;
    let mut w = m_s * ratio;
    let mut p = s;
    for (k, c) in em_coefficients().iter().enumerate() {
        v += w * p * *c;
        let j = (2 * k + 1) as f64;
        p = p * (s + j) * (s + j + 1.0);
        w *= ratio * ratio;
    }
    v
}

fn check_args(s: f64, alpha: f64) -> Result<()> {
    if !(s > 0.0) || s == 1.0 {
        return Err(Error::precondition(format!(
            "hurwitz_zeta: need s > 0 and s != 1, got {s}"
        )));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::precondition(format!(
            "hurwitz_zeta: need 0 < alpha <= 1, got {alpha}"
        )));
    }
    Ok(())
}

/// Hurwitz zeta `ζ(s, α) = Σ_{n≥0} (n+α)^{−s}`.
pub fn hurwitz_zeta(s: f64, alpha: f64) -> Result<f64> {
    check_args(s, alpha)?;
    if s >= 1.5 {
        return Ok(progression_sum_plain(s, alpha, 1.0).0);
    }
    Ok(progression_sum(s, alpha, 1.0).0 + 1.0 / (s - 1.0))
}

/// `(ζ(s, α), ∂ζ/∂s(s, α))`.
pub fn hurwitz_zeta_with_derivative(s: f64, alpha: f64) -> Result<(f64, f64)> {
    check_args(s, alpha)?;
    if s >= 1.5 {
        return Ok(progression_sum_plain(s, alpha, 1.0));
    }
    let (v, dv) = progression_sum(s, alpha, 1.0);
    let inv = 1.0 / (s - 1.0);
    Ok((v + inv, dv - inv * inv))
}
