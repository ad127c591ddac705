//! Dirichlet L-functions through the Hurwitz decomposition
//! `L(s, χ) = Σ_{a=1}^{q} χ(a) Σ_{n≥0} (a + nq)^{−s}`.

use num_complex::Complex64;

use crate::arith::{gcd, root_of_unity, DirichletCharacter, FundamentalDiscriminant};
use crate::error::{Error, Result};
use crate::quad;

use super::hurwitz::{progression_sum, progression_sum_complex, progression_sum_plain};

const NOT_UNIT: u32 = u32::MAX;

/// Values of a character (or any power of one) over a full period, stored
/// as exponents of `e(1/exponent)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterValues {
    modulus: u64,
    exponent: u64,
    idx: Vec<u32>,
}

impl CharacterValues {
    pub fn from_character(chi: &DirichletCharacter) -> Self {
        let q = chi.modulus();
        let idx = (0..q.max(1))
            .map(|n| chi.value_index(n).map_or(NOT_UNIT, |k| k as u32))
            .collect();
        Self {
            modulus: q,
            exponent: chi.group().exponent(),
            idx,
        }
    }

    /// The Kronecker symbol `χ_d` as a character modulo `|d|`.
    pub fn from_kronecker(d: FundamentalDiscriminant) -> Self {
        let q = d.conductor();
        let idx = (0..q)
            .map(|n| match d.chi(n) {
                0 => NOT_UNIT,
                1 => 0,
                _ => 1,
            })
            .collect();
        Self {
            modulus: q,
            exponent: 2,
            idx,
        }
    }

    pub fn principal(q: u64) -> Self {
        let idx = (0..q.max(1))
            .map(|n| if gcd(n, q) == 1 { 0 } else { NOT_UNIT })
            .collect();
        Self {
            modulus: q,
            exponent: 1,
            idx,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `ψ^k`; the zeroth power is the principal character of the same modulus.
    pub fn pow(&self, k: u64) -> Self {
        let e = self.exponent;
        Self {
            modulus: self.modulus,
            exponent: e,
            idx: self
                .idx
                .iter()
                .map(|&i| {
                    if i == NOT_UNIT {
                        NOT_UNIT
                    } else {
                        ((i as u64 * (k % e)) % e) as u32
                    }
                })
                .collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.pow(self.exponent - 1)
    }

    pub fn is_principal(&self) -> bool {
        self.idx.iter().all(|&i| i == 0 || i == NOT_UNIT)
    }

    pub fn is_real(&self) -> bool {
        self.idx
            .iter()
            .all(|&i| i == NOT_UNIT || (2 * i as u64) % self.exponent == 0)
    }

    pub fn value(&self, n: u64) -> Complex64 {
        let i = self.idx[(n % self.modulus.max(1)) as usize];
        if i == NOT_UNIT {
            Complex64::new(0.0, 0.0)
        } else {
            root_of_unity(i as u64, self.exponent)
        }
    }

    fn nonzero(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        let q = self.modulus.max(1);
        (1..=q).filter_map(move |a| {
            let i = self.idx[(a % q) as usize];
            (i != NOT_UNIT).then(|| (a, root_of_unity(i as u64, self.exponent)))
        })
    }
}

/// `L(s, ψ)` and `L'(s, ψ)` at real `s > 0`. The principal character is
/// allowed only away from `s = 1`. Also returns the sum of the moduli of
/// the summands, which scales the rounding error.
pub fn l_real(s: f64, psi: &CharacterValues) -> Result<(Complex64, Complex64, f64)> {
    if !(s > 0.0) {
        return Err(Error::precondition(format!("L(s, χ) needs s > 0, got {s}")));
    }
    let q = psi.modulus.max(1) as f64;
    let mut l = Complex64::new(0.0, 0.0);
    let mut dl = Complex64::new(0.0, 0.0);
    let mut total = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    if s >= 1.5 {
        for (a, v) in psi.nonzero() {
            let (r, dr) = progression_sum_plain(s, a as f64, q);
            l += v * r;
            dl += v * dr;
            scale += r.abs();
        }
        return Ok((l, dl, scale));
    }
    for (a, v) in psi.nonzero() {
        let (r, dr) = progression_sum(s, a as f64, q);
        l += v * r;
        dl += v * dr;
        total += v;
        scale += r.abs();
    }
    if total.norm() > 1e-9 {
        if s == 1.0 {
            return Err(Error::precondition("L(s, χ0) has a pole at s = 1"));
        }
        let inv = 1.0 / (q * (s - 1.0));
        l += total * inv;
        dl -= total * inv / (s - 1.0);
        scale += (total * inv).norm();
    }
    Ok((l, dl, scale))
}

/// `L(s, ψ)` for complex `s ≠ 1` with `Re s > 0`.
pub fn l_complex(s: Complex64, psi: &CharacterValues) -> Complex64 {
    let q = psi.modulus.max(1) as f64;
    psi.nonzero()
        .map(|(a, v)| v * progression_sum_complex(s, a as f64, q))
        .sum()
}

/// An L-value and its `s`-derivative with an estimate of the evaluation error.
#[derive(Clone, Debug)]
pub struct LValuePoint {
    pub modulus: u64,
    pub character_index: u64,
    pub s: f64,
    pub l: Complex64,
    pub l_prime: Complex64,
    pub err: f64,
}

const ROUNDING: f64 = 64.0 * f64::EPSILON;

/// `L(s, χ)` and `L'(s, χ)` for a primitive non-principal character, `1/2 <= s <= 3`.
pub fn dirichlet_l(s: f64, chi: &DirichletCharacter) -> Result<LValuePoint> {
    if chi.is_principal() {
        return Err(Error::precondition(
            "dirichlet_l: principal character has a pole at s = 1",
        ));
    }
    if !chi.is_primitive() {
        return Err(Error::precondition("dirichlet_l: character is not primitive"));
    }
    if !(0.5..=3.0).contains(&s) {
        return Err(Error::precondition(format!(
            "dirichlet_l: s = {s} outside [1/2, 3]"
        )));
    }
    let (l, dl, scale) = l_real(s, &CharacterValues::from_character(chi))?;
    Ok(LValuePoint {
        modulus: chi.modulus(),
        character_index: chi.index(),
        s,
        l,
        l_prime: dl,
        err: ROUNDING * scale.max(1.0),
    })
}

/// `L'/L(1, χ)` and an error bound, for primitive non-principal `χ`.
pub fn logderiv_l_at_1(chi: &DirichletCharacter) -> Result<(Complex64, f64)> {
    let p = dirichlet_l(1.0, chi)?;
    let v = p.l_prime / p.l;
    // first-order propagation of the common error bound
    let err = p.err * (1.0 + v.norm()) / p.l.norm();
    Ok((v, err))
}

/// `log L(1, ψ)` on the branch continuous from `s = +∞` along the real axis
/// (the one given by the Euler product), for non-principal `ψ`.
pub fn log_l_at_1(psi: &CharacterValues) -> Result<Complex64> {
    if psi.is_principal() {
        return Err(Error::precondition("log L(1, χ0) is infinite"));
    }
    let (l1, _, _) = l_real(1.0, psi)?;
    if psi.is_real() {
        return Ok(Complex64::new(l1.norm().ln(), if l1.re < 0.0 { std::f64::consts::PI } else { 0.0 }));
    }
    // |log L(2, ψ)| <= log ζ(2) < π, so the principal logarithm is the right one there
    let (l2, _, _) = l_real(2.0, psi)?;
    let mut integral = 0.0;
    for (lo, hi) in [(1.0, 1.25), (1.25, 1.5), (1.5, 2.0)] {
        integral += quad::gl20().integrate(lo, hi, |s| {
            let (l, dl, _) = l_real(s, psi).expect("s > 1");
            (dl / l).im
        });
    }
    let im_estimate = l2.ln().im - integral;
    let arg = l1.arg();
    let turns = ((im_estimate - arg) / std::f64::consts::TAU).round();
    Ok(Complex64::new(l1.norm().ln(), arg + turns * std::f64::consts::TAU))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::CharacterGroup;
    use std::f64::consts::PI;

    fn kron(d: i64) -> CharacterValues {
        CharacterValues::from_kronecker(FundamentalDiscriminant::new(d).unwrap())
    }

    #[test]
    fn classical_values_at_one() {
        let (l, _, _) = l_real(1.0, &kron(-4)).unwrap();
        assert!((l.re - PI / 4.0).abs() < 1e-14 && l.im == 0.0);
        let (l, _, _) = l_real(1.0, &kron(-3)).unwrap();
        assert!((l.re - PI / (3.0 * 3f64.sqrt())).abs() < 1e-14);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        let (l, _, _) = l_real(1.0, &kron(5)).unwrap();
        assert!((l.re - 2.0 / 5f64.sqrt() * golden.ln()).abs() < 1e-14);
    }

    #[test]
    fn leibniz_partial_sums_oracle() {
        // averaged consecutive partial sums of 1 − 1/3 + 1/5 − …
        let n = 1_000_000;
        let mut s = 0.0;
        let mut prev = 0.0;
        for k in 0..n {
            prev = s;
            let t = 1.0 / (2 * k + 1) as f64;
            s += if k % 2 == 0 { t } else { -t };
        }
        let avg = 0.5 * (s + prev);
        let (l, _, _) = l_real(1.0, &kron(-4)).unwrap();
        assert!((l.re - avg).abs() < 1e-11);
    }

    #[test]
    fn derivative_matches_finite_differences() {
        for d in [5i64, -3, -4, 8, 12, -23] {
            let psi = kron(d);
            let (l, dl, _) = l_real(1.0, &psi).unwrap();
            let v = (dl / l).re;
            let h = 1e-5;
            let lp = l_real(1.0 + h, &psi).unwrap().0.re.ln();
            let lm = l_real(1.0 - h, &psi).unwrap().0.re.ln();
            assert!((v - (lp - lm) / (2.0 * h)).abs() < 1e-6, "d = {d}");
        }
    }

    #[test]
    fn dirichlet_l_preconditions() {
        let g = CharacterGroup::new(5);
        assert!(dirichlet_l(1.0, &g.character(0)).is_err());
        let g = CharacterGroup::new(9);
        let imprimitive = g.characters().into_iter().find(|c| !c.is_primitive() && !c.is_principal());
        assert!(dirichlet_l(1.0, &imprimitive.unwrap()).is_err());
        let chi = CharacterGroup::new(5).character(1);
        assert!(dirichlet_l(4.0, &chi).is_err());
        let p = dirichlet_l(1.0, &chi).unwrap();
        assert!(p.err < 1e-12);
    }

    #[test]
    fn complex_character_series_and_conjugate() {
        let g = CharacterGroup::new(5);
        let chi = g.characters().into_iter().find(|c| c.order() == 4).unwrap();
        let psi = CharacterValues::from_character(&chi);
        let (l, _, _) = l_real(2.0, &psi).unwrap();
        let direct: Complex64 = (1..2_000_000u64)
            .rev()
            .map(|n| psi.value(n) / (n as f64 * n as f64))
            .sum();
        assert!((l - direct).norm() < 1e-6);
        let (lc, _, _) = l_real(1.0, &psi.conj()).unwrap();
        let (l1, _, _) = l_real(1.0, &psi).unwrap();
        assert!((lc - l1.conj()).norm() < 1e-14);
    }

    #[test]
    fn principal_character_is_zeta_times_euler_factors() {
        let psi = CharacterValues::principal(6);
        let (l, _, _) = l_real(3.0, &psi).unwrap();
        let z3 = crate::special::zeta(3.0).unwrap();
        let want = z3 * (1.0 - 1.0 / 8.0) * (1.0 - 1.0 / 27.0);
        assert!((l.re - want).abs() < 1e-14);
        assert!(l_real(1.0, &psi).is_err());
    }

    #[test]
    fn log_l_branch_matches_euler_product() {
        let g = CharacterGroup::new(13);
        for chi in g.characters().into_iter().filter(|c| !c.is_principal()) {
            let psi = CharacterValues::from_character(&chi);
            let got = log_l_at_1(&psi).unwrap();
            // Σ_p Σ_m ψ(p)^m/(m p^m) at s = 1 converges too slowly; compare
            // exp instead and the imaginary part loosely against a truncated product
            let (l1, _, _) = l_real(1.0, &psi).unwrap();
            assert!((got.exp() - l1).norm() < 1e-13);
            let mut partial = Complex64::new(0.0, 0.0);
            for p in crate::arith::primes_up_to(200_000) {
                let v = psi.value(p) / p as f64;
                partial -= (Complex64::new(1.0, 0.0) - v).ln();
            }
            assert!((partial.im - got.im).abs() < 0.05, "{chi:?}");
        }
    }
}
