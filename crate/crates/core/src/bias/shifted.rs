//! `B'_χ = Σ_ρ 1/|ρ(ρ+1)|` and the residue-pair criterion
//! `Σ_{χ mod q} B'_{χ*} < τ·C(q, a)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::golden::{TABLE3, TABLE_NEGATIVE, TABLE_POSITIVE};
use super::zero_sum::{character_zero_sum, ZeroStore};
use super::{Subject, Verdict};
use crate::arith::{c_count, gcd, CharacterGroup, DirichletCharacter, FundamentalDiscriminant};
use crate::bracket::BracketedValue;
use crate::error::{Error, Result};
use crate::zeros::{l_zero_scan, LFunctionId, Weight, MAX_L_CONDUCTOR};

/// `Σ_{χ mod q} B'_{χ*}`, the principal character contributing the zeros of ζ.
pub fn shifted_modulus_sum(q: u64, store: &ZeroStore) -> Result<BracketedValue> {
    if q < 2 {
        return Err(Error::precondition(format!("modulus must exceed 1, got {q}")));
    }
    let mut total: Option<BracketedValue> = None;
    for chi in CharacterGroup::new(q).characters() {
        let s = character_zero_sum(&chi, store, Weight::W2)?;
        total = Some(match total {
            None => s,
            Some(t) => t.plus(&s),
        });
    }
    Ok(total.expect("at least the principal character"))
}

/// One inequality `B' < τ·c` (member) or `B' > τ·c` (non-member) that a
/// threshold coefficient must satisfy.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Constraint {
    pub subject: Subject,
    pub b_prime: BracketedValue,
    pub c: f64,
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TauCandidate {
    pub tau: f64,
    pub derivation: String,
    pub consistent: bool,
}

/// Outcome of fitting the threshold coefficient to known verdicts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Calibration {
    pub constraints: Vec<Constraint>,
    /// every consistent τ exceeds this
    pub lower: f64,
    /// every consistent τ is below this (infinite without non-member data)
    pub upper: f64,
    pub candidates: Vec<TauCandidate>,
    /// the unique consistent candidate
    pub chosen: Option<f64>,
}

impl Calibration {
    pub fn report(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!(
            "feasible threshold coefficients: {:.6} < tau < {}\n",
            self.lower,
            if self.upper.is_finite() {
                format!("{:.6}", self.upper)
            } else {
                "inf".into()
            }
        ));
        for c in &self.constraints {
            s.push_str(&format!(
                "  {} B'={} c={} {}\n",
                c.subject,
                c.b_prime,
                c.c,
                if c.member { "member" } else { "non-member" }
            ));
        }
        for c in &self.candidates {
            s.push_str(&format!(
                "candidate tau={:.6}: {} [{}]\n",
                c.tau,
                if c.consistent { "consistent" } else { "ruled out" },
                c.derivation
            ));
        }
        match self.chosen {
            Some(t) => s.push_str(&format!("chosen tau={t:.6}\n")),
            None => s.push_str("no unique candidate: calibration is ambiguous\n"),
        }
        s
    }
}

/// The two threshold coefficients with a derivation behind them.
fn candidates() -> Vec<(f64, &'static str)> {
    vec![
        (
            2.0 / 3.0,
            "explicit formula: the prime squares contribute -(2/3)C(q,a)X^{3/2}/(phi(q)log X) \
             and each zero X^{rho+1}/(rho(rho+1)log X) to the integral of pi(x;q,a)-li(x)/phi(q)",
        ),
        (
            2.0,
            "the mean-value criterion B_q < 2C(q,a) with 1/|rho|^2 replaced by 1/|rho(rho+1)|",
        ),
    ]
}

fn in_table3(q: u64, a: u64) -> Option<bool> {
    TABLE3
        .iter()
        .find(|(m, _)| *m == q)
        .map(|(_, row)| row.contains(&a))
}

fn in_discriminant_tables(d: i64) -> bool {
    TABLE_POSITIVE.iter().chain(TABLE_NEGATIVE.iter()).any(|&(e, _)| e == d)
}

/// Fits τ to the table rows for `moduli` and to the containment of the
/// discriminant set: every `d` in `containment` is a member, so
/// `B'_{χ_d} < τ`. Needs zero data for every character involved.
pub fn calibrate_tau(store: &ZeroStore, moduli: &[u64], containment: &[i64]) -> Result<Calibration> {
    let mut constraints = Vec::new();
    for &q in moduli {
        let b = shifted_modulus_sum(q, store)?;
        for a in (1..q).filter(|&a| gcd(a, q) == 1) {
            let c = c_count(q, a)? as f64;
            if c == 0.0 {
                continue;
            }
            let member = in_table3(q, a)
                .ok_or_else(|| Error::precondition(format!("no table row for q = {q}")))?;
            constraints.push(Constraint {
                subject: Subject::Residue { q, a },
                b_prime: b.clone(),
                c,
                member,
            });
        }
    }
    for &d in containment {
        if !in_discriminant_tables(d) {
            return Err(Error::precondition(format!("d = {d} is not a listed member")));
        }
        let list = store.get(&LFunctionId::Discriminant(d)).ok_or_else(|| {
            Error::InsufficientData(format!("insufficient zero data: no zero list for d = {d}"))
        })?;
        let fd = FundamentalDiscriminant::new(d)?;
        let model = crate::zeros::CountModel::Dirichlet {
            conductor: fd.conductor(),
            kappa: fd.kappa(),
        };
        constraints.push(Constraint {
            subject: Subject::Discriminant(d),
            b_prime: super::zero_sum(list, list, model, Weight::W2)?,
            c: 1.0,
            member: true,
        });
    }
    let lower = constraints
        .iter()
        .filter(|c| c.member)
        .map(|c| c.b_prime.upper / c.c)
        .fold(f64::NEG_INFINITY, f64::max);
    let upper = constraints
        .iter()
        .filter(|c| !c.member)
        .map(|c| c.b_prime.lower / c.c)
        .fold(f64::INFINITY, f64::min);
    let candidates: Vec<TauCandidate> = candidates()
        .into_iter()
        .map(|(tau, why)| TauCandidate {
            tau,
            derivation: why.to_string(),
            consistent: lower < tau && tau < upper,
        })
        .collect();
    let consistent: Vec<f64> = candidates.iter().filter(|c| c.consistent).map(|c| c.tau).collect();
    Ok(Calibration {
        constraints,
        lower,
        upper,
        chosen: (consistent.len() == 1).then(|| consistent[0]),
        candidates,
    })
}

/// Listed discriminant-set members small enough to scan natively. Scans
/// each one to `height` unless `store` already has its zeros, and returns
/// them for use as containment constraints.
pub fn containment_discriminants(store: &mut ZeroStore, height: f64) -> Result<Vec<i64>> {
    let ds: Vec<i64> = TABLE_POSITIVE
        .iter()
        .chain(TABLE_NEGATIVE.iter())
        .map(|e| e.0)
        .filter(|d| d.unsigned_abs() <= MAX_L_CONDUCTOR)
        .collect();
    let scans = ds
        .par_iter()
        .filter(|&&d| store.get(&LFunctionId::Discriminant(d)).is_none())
        .map(|&d| l_zero_scan(FundamentalDiscriminant::new(d)?, height))
        .collect::<Result<Vec<_>>>()?;
    for list in scans {
        store.insert(list);
    }
    Ok(ds)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table3Row {
    pub q: u64,
    pub a: u64,
    pub c: u64,
    pub b_prime: BracketedValue,
    pub verdict: Verdict,
}

/// Verdicts `B'_q < τ·C(q, a)` for every unit `a` modulo `q`.
pub fn table3_rows(q: u64, store: &ZeroStore, tau: f64) -> Result<Vec<Table3Row>> {
    let b = shifted_modulus_sum(q, store)?;
    (1..q)
        .filter(|&a| gcd(a, q) == 1)
        .map(|a| {
            let c = c_count(q, a)?;
            let verdict = if c == 0 {
                Verdict::NonMember
            } else {
                Verdict::below(&b, tau * c as f64)
            };
            if verdict == Verdict::Undecided {
                return Err(Error::InsufficientData(format!(
                    "insufficient zero data: B' bracket {b} straddles {} at (q,a)=({q},{a})",
                    tau * c as f64
                )));
            }
            Ok(Table3Row {
                q,
                a,
                c,
                b_prime: b.clone(),
                verdict,
            })
        })
        .collect()
}

/// Normalised truncated explicit formula
/// `g(X) = −(2/3)C(q,a) − Re Σ_χ χ̄(a) Σ_ρ X^{iγ}/(ρ(ρ+1))`, whose sign is
/// that of `∫_2^X (π(x;q,a) − li(x)/φ(q)) dx` up to lower-order terms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExplicitProfile {
    pub q: u64,
    pub a: u64,
    /// `(X, g(X))` on a logarithmic grid
    pub points: Vec<(f64, f64)>,
    pub negative_fraction: f64,
    pub max: f64,
}

fn zero_terms(chi: &DirichletCharacter, store: &ZeroStore) -> Result<Vec<f64>> {
    let p = chi.primitive();
    let missing = || Error::InsufficientData(format!("insufficient zero data for a character mod {}", p.modulus()));
    let pos = store.for_character(&p).ok_or_else(missing)?;
    let neg = if p.is_real() {
        pos
    } else {
        store.for_character(&p.conj()).ok_or_else(missing)?
    };
    let t = pos.t_max.min(neg.t_max);
    Ok(pos.ordinates[..pos.count_up_to(t)]
        .iter()
        .copied()
        .chain(neg.ordinates[..neg.count_up_to(t)].iter().map(|g| -g))
        .collect())
}

pub fn explicit_formula_profile(q: u64, a: u64, store: &ZeroStore, x_min: f64, x_max: f64, points: usize) -> Result<ExplicitProfile> {
    if gcd(a, q) != 1 || !(2.0 <= x_min && x_min < x_max) || points < 2 {
        return Err(Error::precondition("explicit profile needs gcd(a,q)=1, 2 <= x_min < x_max, points >= 2"));
    }
    let c = c_count(q, a)? as f64;
    let mut weighted: Vec<(Complex64, Vec<f64>)> = Vec::new();
    for chi in CharacterGroup::new(q).characters() {
        weighted.push((chi.value(a).conj(), zero_terms(&chi, store)?));
    }
    let pts: Vec<(f64, f64)> = (0..points)
        .map(|k| {
            let x = x_min * (x_max / x_min).powf(k as f64 / (points - 1) as f64);
            let lx = x.ln();
            let mut s = Complex64::new(0.0, 0.0);
            for (w, gammas) in &weighted {
                let inner: Complex64 = gammas
                    .iter()
                    .map(|&g| {
                        let rho = Complex64::new(0.5, g);
                        Complex64::from_polar(1.0, g * lx) / (rho * (rho + 1.0))
                    })
                    .sum();
                s += w * inner;
            }
            (x, -2.0 / 3.0 * c - s.re)
        })
        .collect();
    let neg = pts.iter().filter(|p| p.1 < 0.0).count();
    Ok(ExplicitProfile {
        q,
        a,
        negative_fraction: neg as f64 / pts.len() as f64,
        max: pts.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max),
        points: pts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeros::{l_zero_scan, zeta_zero_scan};

    /// Native zeros for the characters modulo 4.
    fn mod4_store() -> ZeroStore {
        let mut store = ZeroStore::new();
        store.insert(zeta_zero_scan(200.0).unwrap());
        store.insert(l_zero_scan(FundamentalDiscriminant::new(-4).unwrap(), 200.0).unwrap());
        store
    }

    #[test]
    fn shifted_sum_is_below_bias_sum() {
        let store = mod4_store();
        let shifted = shifted_modulus_sum(4, &store).unwrap();
        let plain = super::super::b_q(4).unwrap().value;
        assert!(shifted.upper < plain.lower, "{shifted} vs {plain}");
        assert!(shifted.lower > 0.0 && shifted.width() < 0.05);
        assert!(matches!(shifted_modulus_sum(8, &store), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn calibration_bounds_from_members() {
        let store = mod4_store();
        let cal = calibrate_tau(&store, &[4], &[]).unwrap();
        // only a = 1 has square roots modulo 4
        assert_eq!(cal.constraints.len(), 1);
        let b = &cal.constraints[0].b_prime;
        assert_eq!(cal.constraints[0].c, 2.0);
        assert_eq!(cal.lower, b.upper / 2.0);
        assert!(cal.upper.is_infinite());
        assert!(cal.report().contains("feasible"));
        assert!(calibrate_tau(&store, &[4], &[-43]).is_err());
    }

    #[test]
    fn rows_follow_the_threshold() {
        let store = mod4_store();
        let b = shifted_modulus_sum(4, &store).unwrap();
        let high = table3_rows(4, &store, 2.0 * b.upper).unwrap();
        assert_eq!(high.len(), 2);
        assert_eq!(high[0].verdict, Verdict::Member);
        assert_eq!(high[1].verdict, Verdict::NonMember);
        let low = table3_rows(4, &store, b.lower / 4.0).unwrap();
        assert!(low.iter().all(|r| r.verdict == Verdict::NonMember));
        assert!(matches!(table3_rows(4, &store, b.mid() / 2.0), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn explicit_profile_shape() {
        let store = mod4_store();
        let p = explicit_formula_profile(4, 1, &store, 10.0, 1e12, 200).unwrap();
        assert_eq!(p.points.len(), 200);
        assert!(p.points[0].0 == 10.0 && (p.points[199].0 / 1e12 - 1.0).abs() < 1e-12);
        // the prime squares push the residue class of 1 down
        assert!(p.negative_fraction > 0.5);
        assert!(explicit_formula_profile(4, 2, &store, 10.0, 1e3, 5).is_err());
    }
}
