use rayon::prelude::*;
use serde::Serialize;

use super::{b_chi, b_q, BiasConstant, Verdict};
use crate::arith::{c_count_one_formula, primitive_count, FundamentalDiscriminant};
use crate::error::{Error, Result};
use crate::zeros::{count_estimate_integral, tilde_tail_lower_bound};

/// Height from which the even-rounded counting estimate is integrated when
/// excluding large discriminants.
pub const D_EXCLUSION_HEIGHT: f64 = 0.928;
/// Every `|d|` at least this large has `B_{χ_d} > 2`.
pub const D_EXCLUSION_MODULUS: u64 = 460_000;
/// Height from which the counting estimate is integrated for moduli.
pub const Q_EXCLUSION_HEIGHT: f64 = 4.0;
/// Every `q` above this (with `q ≢ 2 mod 4`) has `B_q > 2C(q, 1)`.
pub const Q_EXCLUSION_MODULUS: u64 = 2040;

/// Explicit steps of the Ñ step function are followed up to this height.
const TILDE_END: f64 = 200.0;

/// A checked numerical inequality `value > threshold` (or `>=` for monotone
/// checks) supporting an exclusion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub subject: String,
    pub statement: String,
    pub value: f64,
    pub threshold: f64,
    pub holds: bool,
}

impl Certificate {
    fn greater(subject: impl Into<String>, statement: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            subject: subject.into(),
            statement: statement.into(),
            value,
            threshold,
            holds: value > threshold,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub domain: String,
    pub members: Vec<BiasConstant>,
    pub non_members: Vec<BiasConstant>,
    /// brackets containing the threshold
    pub undecided: Vec<BiasConstant>,
    pub certificates: Vec<Certificate>,
}

impl SearchReport {
    fn from_verdicts(domain: String, mut rows: Vec<(BiasConstant, Verdict)>, certificates: Vec<Certificate>) -> Self {
        rows.sort_by_key(|(b, _)| subject_key(b));
        let mut report = SearchReport {
            domain,
            members: Vec::new(),
            non_members: Vec::new(),
            undecided: Vec::new(),
            certificates,
        };
        for (b, v) in rows {
            match v {
                Verdict::Member => report.members.push(b),
                Verdict::NonMember => report.non_members.push(b),
                Verdict::Undecided => report.undecided.push(b),
            }
        }
        report
    }

    pub fn certificates_hold(&self) -> bool {
        self.certificates.iter().all(|c| c.holds)
    }

    pub fn scanned(&self) -> usize {
        self.members.len() + self.non_members.len() + self.undecided.len()
    }
}

fn subject_key(b: &BiasConstant) -> i64 {
    match b.subject {
        super::Subject::Discriminant(d) => d,
        super::Subject::Modulus(q) => q as i64,
        _ => 0,
    }
}

/// Classifies every fundamental `d` with `1 < |d| <= bound` by `B_{χ_d} < 2`
/// and certifies the exclusion of `|d| >= 460000` on sample conductors.
pub fn search_discriminants(bound: u64) -> Result<SearchReport> {
    if bound < 3 {
        return Err(Error::precondition(format!("search bound must be at least 3, got {bound}")));
    }
    let ds: Vec<FundamentalDiscriminant> = FundamentalDiscriminant::up_to(bound)
        .into_iter()
        .filter(|d| d.conductor() > 1)
        .collect();
    let rows = ds
        .par_iter()
        .map(|&d| {
            let b = b_chi(d)?;
            let v = Verdict::below(&b.value, 2.0);
            Ok((b, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let certificates = discriminant_certificates()?;
    Ok(SearchReport::from_verdicts(
        format!("fundamental d with 1 < |d| <= {bound}"),
        rows,
        certificates,
    ))
}

fn discriminant_certificates() -> Result<Vec<Certificate>> {
    let t = D_EXCLUSION_HEIGHT;
    let samples = [D_EXCLUSION_MODULUS, 500_000, 1_000_000, 10_000_000, 100_000_000];
    let mut out: Vec<Certificate> = samples
        .par_iter()
        .map(|&q| {
            let v = tilde_tail_lower_bound(t, q, TILDE_END)?;
            Ok(Certificate::greater(
                format!("|d|={q}"),
                format!("tail lower bound from T={t} exceeds 2"),
                v,
                2.0,
            ))
        })
        .collect::<Result<_>>()?;
    // nondecreasing in |d| on a grid reaching the cutoff
    let grid: Vec<u64> = (0..=24).map(|k| (1000.0 * 460f64.powf(k as f64 / 24.0)) as u64).collect();
    let values = grid
        .par_iter()
        .map(|&q| tilde_tail_lower_bound(t, q, TILDE_END))
        .collect::<Result<Vec<_>>>()?;
    let worst = values
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min);
    out.push(Certificate {
        subject: format!("|d| in [{}, {}]", grid[0], grid[grid.len() - 1]),
        statement: "tail lower bound is nondecreasing in |d|".into(),
        value: worst,
        threshold: 0.0,
        holds: worst >= 0.0,
    });
    Ok(out)
}

/// Classifies every `2 <= q <= bound` by `B_q < 2C(q, 1)` and certifies the
/// exclusion of `q > 2040` on the sample range `(2040, 2040 + samples]`.
pub fn search_moduli(bound: u64, samples: u64) -> Result<SearchReport> {
    if bound < 3 {
        return Err(Error::precondition(format!("search bound must be at least 3, got {bound}")));
    }
    let qs: Vec<u64> = (2..=bound).collect();
    let mut values: Vec<Option<BiasConstant>> = qs
        .par_iter()
        .map(|&q| {
            // characters mod 2m with m odd are all induced from mod m
            if q > 2 && q % 4 == 2 {
                Ok(None)
            } else {
                b_q(q).map(Some)
            }
        })
        .collect::<Result<_>>()?;
    for i in 0..values.len() {
        let q = qs[i];
        if values[i].is_none() {
            let half = values[(q / 2 - 2) as usize].clone().expect("odd half computed");
            values[i] = Some(BiasConstant {
                subject: super::Subject::Modulus(q),
                ..half
            });
        }
    }
    let mut certificates = Vec::new();
    let mut rows = Vec::new();
    for (q, b) in qs.iter().zip(values) {
        let b = b.expect("filled above");
        let c = c_count_one_formula(*q) as f64;
        let v = Verdict::below(&b.value, 2.0 * c);
        if let Some(lb) = moduli_lower_bound(*q)? {
            // the analytic lower bound must never contradict a member
            if v == Verdict::Member && lb >= 2.0 * c {
                certificates.push(Certificate::greater(
                    format!("q={q}"),
                    "member consistent with the analytic lower bound",
                    2.0 * c,
                    lb,
                ));
            }
        }
        rows.push((b, v));
    }
    certificates.extend(moduli_certificates(samples)?);
    Ok(SearchReport::from_verdicts(
        format!("moduli 2 <= q <= {bound}"),
        rows,
        certificates,
    ))
}

/// `n(q) ∫_4^∞ 2t g(t)/(1/4+t²)² dt`, or `None` where the counting bound
/// does not apply or `q ≡ 2 mod 4`.
fn moduli_lower_bound(q: u64) -> Result<Option<f64>> {
    if q % 4 == 2 || q < 6 {
        return Ok(None);
    }
    let n = primitive_count(q) as f64;
    Ok(Some(n * count_estimate_integral(Q_EXCLUSION_HEIGHT, q)?))
}

fn moduli_certificates(samples: u64) -> Result<Vec<Certificate>> {
    let qs: Vec<u64> = (Q_EXCLUSION_MODULUS + 1..=Q_EXCLUSION_MODULUS + samples)
        .filter(|q| q % 4 != 2)
        .collect();
    if qs.is_empty() {
        return Ok(Vec::new());
    }
    let pairs = qs
        .par_iter()
        .map(|&q| {
            let ratio = primitive_count(q) as f64 / c_count_one_formula(q) as f64;
            Ok((q, ratio, count_estimate_integral(Q_EXCLUSION_HEIGHT, q)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let (qr, ratio) = pairs
        .iter()
        .map(|&(q, r, _)| (q, r))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");
    let (qi, integral) = pairs
        .iter()
        .map(|&(q, _, i)| (q, i))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");
    let range = format!("{} sampled q in ({}, {}]", qs.len(), Q_EXCLUSION_MODULUS, Q_EXCLUSION_MODULUS + samples);
    Ok(vec![
        Certificate::greater(
            range.clone(),
            format!("n(q)/C(q,1) > 3 (minimum at q={qr})"),
            ratio,
            3.0,
        ),
        Certificate::greater(
            range,
            format!("counting-estimate integral from T=4 > 2/3 (minimum at q={qi})"),
            integral,
            2.0 / 3.0,
        ),
    ])
}
