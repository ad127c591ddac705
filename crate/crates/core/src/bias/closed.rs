use std::f64::consts::PI;

use serde::Serialize;

use super::{BiasConstant, Route, Subject, Verdict};
use crate::arith::{CharacterGroup, DirichletCharacter, FundamentalDiscriminant};
use crate::bracket::BracketedValue;
use crate::error::{Error, Result};
use crate::special::{digamma, l_real, logderiv_l_at_1, CharacterValues, MertensConstants, EULER_GAMMA};

const CLOSED: &str = "closed form at s = 1";

/// `B_1 = 2 + γ − log 4π`.
pub fn b1() -> BiasConstant {
    let v = MertensConstants::b1_dd();
    BiasConstant {
        subject: Subject::Zeta,
        value: BracketedValue::around(v.to_f64(), 1e-16, CLOSED),
        route: Route::ClosedForm,
    }
}

/// `B_χ = log(f/π) + ψ((1+κ)/2) + 2 Re L'/L(1, χ)` for a primitive
/// non-principal `χ` of conductor `f` and parity `κ`.
pub fn primitive_bias(chi: &DirichletCharacter) -> Result<BracketedValue> {
    let (v, err) = logderiv_l_at_1(chi)?;
    let f = chi.conductor() as f64;
    let b = (f / PI).ln() + digamma(0.5 * (1.0 + chi.kappa() as f64)) + 2.0 * v.re;
    Ok(BracketedValue::around(b, 2.0 * err + 1e-14 * b.abs().max(1.0), CLOSED))
}

/// `B_{χ_d} = log(|d|/π) + 2 L'/L(1, χ_d) − γ − 2(1−κ) log 2`.
pub fn b_chi(d: FundamentalDiscriminant) -> Result<BiasConstant> {
    if d.conductor() < 2 {
        return Err(Error::precondition("b_chi needs |d| > 1"));
    }
    let psi = CharacterValues::from_kronecker(d);
    let (l, dl, scale) = l_real(1.0, &psi)?;
    let v = (dl / l).re;
    let kappa = d.kappa() as f64;
    let b = (d.conductor() as f64 / PI).ln() + 2.0 * v - EULER_GAMMA - 2.0 * (1.0 - kappa) * 2f64.ln();
    let err = 2.0 * 64.0 * f64::EPSILON * scale.max(1.0) * (1.0 + v.abs()) / l.norm() + 1e-14;
    Ok(BiasConstant {
        subject: Subject::Discriminant(d.d()),
        value: BracketedValue::around(b, err, CLOSED),
        route: Route::ClosedForm,
    })
}

/// `B_q = B_1 + Σ_{χ ≠ χ0 mod q} B_{χ*}`.
pub fn b_q(q: u64) -> Result<BiasConstant> {
    if q < 2 {
        return Err(Error::precondition(format!("b_q needs q > 1, got {q}")));
    }
    let mut total = b1().value;
    for chi in CharacterGroup::new(q).characters().iter().skip(1) {
        total = total.plus(&primitive_bias(&chi.primitive())?);
    }
    Ok(BiasConstant {
        subject: Subject::Modulus(q),
        value: total,
        route: Route::ClosedForm,
    })
}

/// `B_1 + B_{χ_d}` for the quadratic field of discriminant `d`.
#[derive(Clone, Debug, Serialize)]
pub struct QuadraticFieldCheck {
    pub d: i64,
    pub b1: BracketedValue,
    pub b_chi: BracketedValue,
    pub combined: BracketedValue,
    /// member when the combined constant is below 2
    pub verdict: Verdict,
}

pub fn quadratic_field_check(d: FundamentalDiscriminant) -> Result<QuadraticFieldCheck> {
    let b1 = b1().value;
    let bd = b_chi(d)?.value;
    let combined = b1.plus(&bd);
    Ok(QuadraticFieldCheck {
        d: d.d(),
        verdict: Verdict::below(&combined, 2.0),
        b1,
        b_chi: bd,
        combined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(d: i64) -> FundamentalDiscriminant {
        FundamentalDiscriminant::new(d).unwrap()
    }

    #[test]
    fn b1_value() {
        let b = b1().value.mid();
        assert!((b - 0.046191417932).abs() < 1e-12);
    }

    #[test]
    fn table_entries() {
        for (d, table) in [(5, 0.156), (-3, 0.113), (1201, 1.950), (-4, 0.155), (77, 1.922)] {
            let b = b_chi(fd(d)).unwrap().value;
            assert!(b.width() < 1e-12);
            assert!(b.mid() >= table && b.mid() < table + 1e-3, "d = {d}: {}", b.mid());
        }
    }

    #[test]
    fn kronecker_and_character_routes_agree() {
        // χ_{-4} is the odd character mod 4, χ_5 the quadratic one mod 5
        let g4 = CharacterGroup::new(4);
        let a = primitive_bias(&g4.character(1)).unwrap().mid();
        assert!((a - b_chi(fd(-4)).unwrap().value.mid()).abs() < 1e-13);
        let g5 = CharacterGroup::new(5);
        let a = primitive_bias(&g5.character(2)).unwrap().mid();
        assert!((a - b_chi(fd(5)).unwrap().value.mid()).abs() < 1e-13);
    }

    #[test]
    fn modulus_constants() {
        let b2 = b_q(2).unwrap().value.mid();
        assert!((b2 - b1().value.mid()).abs() < 1e-15);
        // characters mod 2m are induced from mod m for odd m
        for m in [3u64, 5, 7, 15] {
            let a = b_q(m).unwrap().value.mid();
            let b = b_q(2 * m).unwrap().value.mid();
            assert!((a - b).abs() < 1e-12);
        }
        let b3 = b_q(3).unwrap().value.mid();
        assert!((b3 - b1().value.mid() - b_chi(fd(-3)).unwrap().value.mid()).abs() < 1e-13);
        assert!(b_q(1).is_err());
    }

    #[test]
    fn quadratic_fields() {
        assert_eq!(quadratic_field_check(fd(5)).unwrap().verdict, Verdict::Member);
        assert_eq!(quadratic_field_check(fd(1201)).unwrap().verdict, Verdict::Member);
        assert_eq!(quadratic_field_check(fd(-43)).unwrap().verdict, Verdict::NonMember);
    }
}
