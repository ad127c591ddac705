//! Bias constants `B = Σ_ρ 1/|ρ|²` of ζ and Dirichlet L-functions, the
//! membership searches built on them, and the shifted-weight variant
//! `Σ_ρ 1/|ρ(ρ+1)|` behind the progression table.

mod closed;
pub mod golden;
mod search;
mod shifted;
mod zero_sum;

pub use closed::{b1, b_chi, b_q, primitive_bias, quadratic_field_check, QuadraticFieldCheck};
pub use search::{
    search_discriminants, search_moduli, Certificate, SearchReport, D_EXCLUSION_HEIGHT,
    D_EXCLUSION_MODULUS, Q_EXCLUSION_HEIGHT, Q_EXCLUSION_MODULUS,
};
pub use shifted::{
    calibrate_tau, containment_discriminants, explicit_formula_profile, shifted_modulus_sum, table3_rows, Calibration,
    Constraint, ExplicitProfile, Table3Row, TauCandidate,
};
pub use zero_sum::{b1_zero_sum, b_chi_two_route, character_zero_sum, zero_sum, ZeroStore};

use std::fmt;

use serde::Serialize;

use crate::bracket::{BracketedValue, Comparison};

/// What a bias constant belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Subject {
    Zeta,
    Discriminant(i64),
    Modulus(u64),
    Residue { q: u64, a: u64 },
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Subject::Zeta => write!(f, "zeta"),
            Subject::Discriminant(d) => write!(f, "d={d}"),
            Subject::Modulus(q) => write!(f, "q={q}"),
            Subject::Residue { q, a } => write!(f, "(q,a)=({q},{a})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    ClosedForm,
    ZeroSum,
    Both,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BiasConstant {
    pub subject: Subject,
    pub value: BracketedValue,
    pub route: Route,
}

/// Outcome of comparing a bracketed constant with a threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Member,
    NonMember,
    /// the bracket contains the threshold
    Undecided,
}

impl Verdict {
    /// Membership means lying strictly below `threshold`.
    pub fn below(value: &BracketedValue, threshold: f64) -> Self {
        match value.compare(threshold) {
            Comparison::Below => Verdict::Member,
            Comparison::Above => Verdict::NonMember,
            Comparison::Straddles => Verdict::Undecided,
        }
    }
}
