//! The Mertens constants and their twisted and progression analogues.
//!
//! Prime sums `P_ψ(s) = Σ_p ψ(p) p^{−s}` for `s >= 2` are obtained from
//! L-values through Möbius inversion of the Euler product,
//! `P_ψ(s) = Σ_k μ(k)/k · log L(ks, ψ^k)`, which converges like `2^{−ks}`.

use num_complex::Complex64;

use crate::arith::{factor, mobius, totient, CharacterGroup, FundamentalDiscriminant};
use crate::dd::DoubleDouble;
use crate::error::{Error, Result};

use super::lfunc::{l_real, log_l_at_1, CharacterValues};
use super::{zeta_logderiv, zeta_minus_one, EULER_GAMMA};

/// Truncation point for `Σ_k 2^{−k}`-type series.
const MAX_EXPONENT: u64 = 64;

/// ℰ_1, ℰ_2, γ and `B_1 = 2 + γ − log 4π`.
#[derive(Clone, Copy, Debug)]
pub struct MertensConstants {
    /// `Σ_{p≤x} log p / p − log x → ℰ_1`
    pub e1: f64,
    /// `Σ_{p≤x} 1/p − log log x → ℰ_2`
    pub e2: f64,
    pub gamma: f64,
    pub b1: f64,
    /// bound on the evaluation error of `e1` and `e2`
    pub err: f64,
}

impl MertensConstants {
    pub fn b1_dd() -> DoubleDouble {
        DoubleDouble::from_f64(2.0) + DoubleDouble::EULER_GAMMA - DoubleDouble::LN_4PI
    }
}

/// `Σ_{m≥2} μ(m)/m · log ζ(m)` and `Σ_{m≥2} μ(m) ζ'/ζ(m)`.
fn mobius_zeta_sums() -> (f64, f64) {
    let mut a = 0.0;
    let mut b = 0.0;
    for m in (2..=MAX_EXPONENT).rev() {
        let mu = mobius(m) as f64;
        if mu == 0.0 {
            continue;
        }
        let s = m as f64;
        let zm1 = zeta_minus_one(s).expect("s >= 2");
        a += mu / s * zm1.ln_1p();
        b += mu * zeta_logderiv(s).expect("s >= 2");
    }
    (a, b)
}

pub fn mertens_constants() -> MertensConstants {
    let (a, b) = mobius_zeta_sums();
    // Σ_p Σ_{n≥2} log p / p^n = Σ_{k≥2} Σ_p log p / p^k = Σ_{m≥2} μ(m) ζ'/ζ(m)
    let e1 = -EULER_GAMMA - b;
    let e2 = EULER_GAMMA + a;
    MertensConstants {
        e1,
        e2,
        gamma: EULER_GAMMA,
        b1: MertensConstants::b1_dd().to_f64(),
        err: 1e-15,
    }
}

/// `log L(s, ψ)` and `L'/L(s, ψ)` for `s >= 2`, on the Euler-product branch.
fn log_l_and_logderiv(s: f64, psi: &CharacterValues) -> (Complex64, Complex64) {
    if s >= 24.0 {
        // L − 1 directly; the terms die off like n^{−24} at worst
        let mut lm1 = Complex64::new(0.0, 0.0);
        let mut dl = Complex64::new(0.0, 0.0);
        for n in 2..200u64 {
            let nf = n as f64;
            let t = (-s * nf.ln()).exp();
            if t < 1e-40 {
                break;
            }
            let v = psi.value(n);
            lm1 += v * t;
            dl -= v * t * nf.ln();
        }
        let log = if lm1.norm() < 1e-4 {
            lm1 - lm1 * lm1 / 2.0 + lm1 * lm1 * lm1 / 3.0
        } else {
            (lm1 + 1.0).ln()
        };
        return (log, dl / (lm1 + 1.0));
    }
    let (l, dl, _) = l_real(s, psi).expect("s >= 2");
    (l.ln(), dl / l)
}

/// `P_ψ(s) = Σ_p ψ(p) p^{−s}` and `P'_ψ(s) = Σ_p ψ(p) log p · p^{−s}`, `s >= 2`.
fn prime_sums(psi: &CharacterValues, s: f64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for k in 1..=MAX_EXPONENT {
        let ks = k as f64 * s;
        if ks > MAX_EXPONENT as f64 + 2.0 {
            break;
        }
        let mu = mobius(k) as f64;
        if mu == 0.0 {
            continue;
        }
        let (log, ld) = log_l_and_logderiv(ks, &psi.pow(k));
        p += log * (mu / k as f64);
        dp -= ld * mu;
    }
    (p, dp)
}

/// `Σ_p Σ_{n≥2} ψ(p)^n log p / p^n` and `Σ_p Σ_{n≥2} ψ(p)^n / (n p^n)`.
#[derive(Clone, Copy, Debug)]
pub struct PrimePowerSums {
    pub log_weighted: Complex64,
    pub reciprocal: Complex64,
}

pub fn prime_power_sums(psi: &CharacterValues) -> PrimePowerSums {
    let mut a1 = Complex64::new(0.0, 0.0);
    let mut a2 = Complex64::new(0.0, 0.0);
    for n in 2..=MAX_EXPONENT {
        let (p, dp) = prime_sums(&psi.pow(n), n as f64);
        a1 += dp;
        a2 += p / n as f64;
    }
    PrimePowerSums {
        log_weighted: a1,
        reciprocal: a2,
    }
}

/// Constants attached to `χ_d`: the limits of `Σ χ_d(p) log p / p`,
/// `Σ χ_d(p)/p` and `∏ (1 − χ_d(p)/p)^{−1}`.
#[derive(Clone, Copy, Debug)]
pub struct TwistedConstants {
    pub d: i64,
    /// `L(1, χ_d)`
    pub l1: f64,
    /// `L'/L(1, χ_d)`
    pub logderiv: f64,
    /// `ℰ_1(d) = −L'/L(1, χ_d) − Σ_p Σ_{n≥2} χ_d(p)^n log p / p^n`
    pub e1: f64,
    /// `ℰ_2(d) = log L(1, χ_d) − Σ_p Σ_{n≥2} χ_d(p)^n / (n p^n)`
    pub e2: f64,
    pub err: f64,
}

pub fn twisted_constants(d: FundamentalDiscriminant) -> TwistedConstants {
    let psi = CharacterValues::from_kronecker(d);
    let (l, dl, scale) = l_real(1.0, &psi).expect("non-principal");
    let l1 = l.re;
    let logderiv = (dl / l).re;
    let pp = prime_power_sums(&psi);
    TwistedConstants {
        d: d.d(),
        l1,
        logderiv,
        e1: -logderiv - pp.log_weighted.re,
        e2: l1.ln() - pp.reciprocal.re,
        err: 64.0 * f64::EPSILON * scale.max(1.0) / l1,
    }
}

/// Constants for primes in the progression `a mod q`:
/// `Σ_{p≤x, p≡a} log p/p − log x/φ(q) → ℰ_1(q,a)`,
/// `Σ_{p≤x, p≡a} 1/p − log log x/φ(q) → ℰ_2(q,a)`,
/// `(log x)^{−1/φ(q)} ∏_{p≤x, p≡a} (1−1/p)^{−1} → ℰ_3(q,a)`.
#[derive(Clone, Copy, Debug)]
pub struct ProgressionConstants {
    pub q: u64,
    pub a: u64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
}

/// All `ℰ_i(q, a)` for the units `a` modulo `q`, in increasing `a`.
pub fn progression_constants(q: u64) -> Result<Vec<ProgressionConstants>> {
    if q < 2 {
        return Err(Error::precondition(format!("progression constants need q > 1, got {q}")));
    }
    let mc = mertens_constants();
    let group = CharacterGroup::new(q);
    let phi = totient(q) as f64;
    let primes_of_q: Vec<u64> = factor(q).into_iter().map(|(p, _)| p).collect();
    let mut c1 = Vec::new();
    let mut c2 = Vec::new();
    let mut chars = Vec::new();
    // Σ_{n≥2} (1/n) Σ_p χ(p) p^{−n}, per character, including the principal one
    let mut r = Vec::new();
    for chi in group.characters() {
        let psi = CharacterValues::from_character(&chi);
        let mut rr = Complex64::new(0.0, 0.0);
        for n in 2..=MAX_EXPONENT {
            rr += prime_sums(&psi, n as f64).0 / n as f64;
        }
        r.push(rr);
        if chi.is_principal() {
            c1.push(Complex64::new(0.0, 0.0));
            c2.push(Complex64::new(0.0, 0.0));
        } else {
            let (l, dl, _) = l_real(1.0, &psi)?;
            let pp = prime_power_sums(&psi);
            c1.push(-dl / l - pp.log_weighted);
            c2.push(log_l_at_1(&psi)? - pp.reciprocal);
        }
        chars.push(chi);
    }
    let principal1 = mc.e1 - primes_of_q.iter().map(|&p| (p as f64).ln() / p as f64).sum::<f64>();
    let principal2 = mc.e2 - primes_of_q.iter().map(|&p| 1.0 / p as f64).sum::<f64>();
    let mut out = Vec::new();
    for a in (1..q).filter(|&a| crate::arith::gcd(a, q) == 1) {
        let mut s1 = Complex64::new(principal1, 0.0);
        let mut s2 = Complex64::new(principal2, 0.0);
        let mut sr = Complex64::new(0.0, 0.0);
        for (i, chi) in chars.iter().enumerate() {
            let w = chi.value(a).conj();
            s1 += w * c1[i];
            s2 += w * c2[i];
            sr += w * r[i];
        }
        let e2 = s2.re / phi;
        out.push(ProgressionConstants {
            q,
            a,
            e1: s1.re / phi,
            e2,
            e3: (e2 + sr.re / phi).exp(),
        });
    }
    Ok(out)
}
