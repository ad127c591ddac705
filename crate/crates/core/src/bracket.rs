//! Interval-valued results.

use std::fmt;

use serde::Serialize;

/// A real number known to lie in `[lower, upper]`, with a note on where the
/// width comes from.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BracketedValue {
    pub lower: f64,
    pub upper: f64,
    pub provenance: String,
}

/// Position of a bracket relative to a threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Below,
    Above,
    Straddles,
}

impl BracketedValue {
    pub fn new(lower: f64, upper: f64, provenance: impl Into<String>) -> Self {
        assert!(lower <= upper, "empty bracket [{lower}, {upper}]");
        Self {
            lower,
            upper,
            provenance: provenance.into(),
        }
    }

    /// `value ± err`
    pub fn around(value: f64, err: f64, provenance: impl Into<String>) -> Self {
        Self::new(value - err.abs(), value + err.abs(), provenance)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lower <= other.upper && other.lower <= self.upper
    }

    /// Interval sum; provenances are joined.
    pub fn plus(&self, other: &Self) -> Self {
        Self::new(
            self.lower + other.lower,
            self.upper + other.upper,
            join(&self.provenance, &other.provenance),
        )
    }

    pub fn shift(&self, by: f64) -> Self {
        Self::new(self.lower + by, self.upper + by, self.provenance.clone())
    }

    /// Multiplies by `k >= 0`.
    pub fn scale(&self, k: f64) -> Self {
        assert!(k >= 0.0);
        Self::new(self.lower * k, self.upper * k, self.provenance.clone())
    }

    pub fn widen(&self, by: f64) -> Self {
        Self::new(self.lower - by.abs(), self.upper + by.abs(), self.provenance.clone())
    }

    pub fn compare(&self, threshold: f64) -> Comparison {
        if self.upper < threshold {
            Comparison::Below
        } else if self.lower > threshold {
            Comparison::Above
        } else {
            Comparison::Straddles
        }
    }
}

fn join(a: &str, b: &str) -> String {
    match (a.is_empty(), b.is_empty()) {
        (true, _) => b.to_string(),
        (_, true) => a.to_string(),
        _ if a == b => a.to_string(),
        _ => format!("{a}; {b}"),
    }
}

impl fmt::Display for BracketedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12e}, {:.12e}]", self.lower, self.upper)
    }
}
