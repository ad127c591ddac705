use serde::Serialize;

use super::checkpoint::{PrimeCheckpoint, PrimeSums};
use super::PrimeObserver;
use crate::special::MertensConstants;

/// `E_1, E_2, E_3` at one abscissa.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MertensErrors {
    pub x: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    /// `e^γ (e^{E_2} − 1)`, the smooth part of `E_3`.
    pub e3_identity: f64,
}

impl MertensErrors {
    pub const CSV_HEADER: &'static str = "x,E1,E2,E3";

    fn from_sums(x: f64, s1: f64, s2: f64, log_one_minus: f64, c: &MertensConstants) -> Self {
        let lx = x.ln();
        let e2 = s2 - lx.ln() - c.e2;
        Self {
            x,
            e1: s1 - lx - c.e1,
            e2,
            e3: (-log_one_minus).exp() / lx - c.gamma.exp(),
            e3_identity: c.gamma.exp() * e2.exp_m1(),
        }
    }

    pub fn min(&self) -> f64 {
        self.e1.min(self.e2).min(self.e3)
    }
}

pub fn mertens_errors(cp: &PrimeCheckpoint, c: &MertensConstants) -> MertensErrors {
    MertensErrors::from_sums(cp.x, cp.sum_logp_over_p, cp.sum_recip, cp.sum_log_one_minus, c)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Extremum {
    pub x: f64,
    pub value: f64,
}

/// Outcome of a positivity sweep.
#[derive(Clone, Debug, Serialize)]
pub struct PositivityReport {
    pub x_max: f64,
    /// Number of abscissae examined.
    pub points: u64,
    pub min_e1: Extremum,
    pub min_e2: Extremum,
    pub min_e3: Extremum,
    /// Largest `|E_2|` over `x > 2`.
    pub max_abs_e2: Extremum,
    /// Number of examined abscissae where some `E_i <= 0`.
    pub violations: u64,
    pub first_violation: Option<f64>,
}

impl PositivityReport {
    pub fn all_positive(&self) -> bool {
        self.violations == 0
    }
}

/// Checks `E_i > 0` on all of `[2, x_max]`.
///
/// Between prime powers each `E_i` is strictly decreasing and the prime sums
/// only jump at primes, so the infimum over a gap is the left limit at the
/// next prime. Those left limits, the checkpoints and `x = 2` are examined.
pub struct PositivitySweep {
    constants: MertensConstants,
    sums: PrimeSums,
    report: PositivityReport,
}

impl PositivitySweep {
    pub fn new(constants: MertensConstants) -> Self {
        let none = Extremum {
            x: f64::NAN,
            value: f64::INFINITY,
        };
        Self {
            constants,
            sums: PrimeSums::default(),
            report: PositivityReport {
                x_max: 2.0,
                points: 0,
                min_e1: none,
                min_e2: none,
                min_e3: none,
                max_abs_e2: Extremum { x: f64::NAN, value: 0.0 },
                violations: 0,
                first_violation: None,
            },
        }
    }

    fn examine(&mut self, x: f64) {
        let s = &self.sums;
        let e = MertensErrors::from_sums(
            x,
            s.logp_over_p.to_f64(),
            s.recip.to_f64(),
            s.log_one_minus.to_f64(),
            &self.constants,
        );
        let r = &mut self.report;
        r.points += 1;
        r.x_max = r.x_max.max(x);
        for (slot, v) in [(&mut r.min_e1, e.e1), (&mut r.min_e2, e.e2), (&mut r.min_e3, e.e3)] {
            if v < slot.value {
                *slot = Extremum { x, value: v };
            }
        }
        if x > 2.0 && e.e2.abs() > r.max_abs_e2.value {
            r.max_abs_e2 = Extremum { x, value: e.e2.abs() };
        }
        if e.min() <= 0.0 {
            r.violations += 1;
            r.first_violation.get_or_insert(x);
        }
    }

    pub fn report(&self) -> &PositivityReport {
        &self.report
    }

    pub fn into_report(self) -> PositivityReport {
        self.report
    }
}

impl PrimeObserver for PositivitySweep {
    fn on_prime(&mut self, p: u64) {
        if p > 2 {
            self.examine(p as f64);
        }
        self.sums.add_prime(p);
        if p == 2 {
            self.examine(2.0);
        }
    }

    fn on_checkpoint(&mut self, x: f64) {
        self.examine(x);
    }
}

#[cfg(test)]
mod tests {
    use super::super::{stream_checkpoints, sweep, CheckpointGrid, SweepOptions};
    use super::*;
    use crate::special::mertens_constants;

    #[test]
    fn value_at_two() {
        let c = mertens_constants();
        let cps = stream_checkpoints(2, &CheckpointGrid::Explicit(vec![]), SweepOptions::default()).unwrap();
        let e = mertens_errors(&cps[0], &c);
        let ln2 = std::f64::consts::LN_2;
        assert!((e.e1 - (ln2 / 2.0 - ln2 - c.e1)).abs() < 1e-15);
        // E_3(2) = 2 / log 2 − e^γ
        assert!((e.e3 - (2.0 / ln2 - c.gamma.exp())).abs() < 1e-14);
    }

    #[test]
    fn errors_shrink_and_stay_positive() {
        let c = mertens_constants();
        let cps = stream_checkpoints(1_000_000, &CheckpointGrid::default(), SweepOptions::default()).unwrap();
        for cp in &cps {
            let e = mertens_errors(cp, &c);
            assert!(e.min() > 0.0, "x = {}", cp.x);
            if cp.x > 2.0 {
                assert!(e.e2.abs() < 1.0);
            }
        }
        let last = mertens_errors(cps.last().unwrap(), &c);
        assert!(last.e1 < 5e-3 && last.e2 < 1e-3 && last.e3 < 2e-3, "{last:?}");
        // E_3 and its smooth part differ by O(1/(√x log x)) only
        assert!((last.e3 - last.e3_identity).abs() < 1e-3);
    }

    #[test]
    fn product_form_differs_by_prime_power_tail() {
        let c = mertens_constants();
        let grid = CheckpointGrid::Linear { step: 997.0 };
        for cp in stream_checkpoints(100_000, &grid, SweepOptions::default()).unwrap() {
            let e = mertens_errors(&cp, &c);
            // t(x) = Σ_{p>x} Σ_{n≥2} 1/(n p^n)
            let t = c.gamma - c.e2 + cp.sum_log_one_minus + cp.sum_recip;
            assert!(t > 0.0);
            let want = c.gamma.exp() * (e.e2 - t).exp_m1();
            assert!((e.e3 - want).abs() < 1e-12, "x = {}", cp.x);
        }
    }

    #[test]
    fn sweep_checks_left_limits() {
        let c = mertens_constants();
        let mut s = PositivitySweep::new(c);
        sweep(100_000, &[100_000.0], SweepOptions::default(), &mut [&mut s]).unwrap();
        let r = s.into_report();
        // x = 2, every odd prime, and the final checkpoint
        assert_eq!(r.points, 9592 + 1);
        assert!(r.all_positive(), "{r:?}");
        assert!(r.max_abs_e2.value < 1.0);
    }
}
