use serde::Serialize;

use super::checkpoint::PrimeSums;
use super::{sweep, PrimeObserver, SweepOptions};
use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::quad::{gl16, gl8};
use crate::special::{li, li_diff, MertensConstants};

/// Mean values of the Mertens errors over `[2, X]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MeanValueReport {
    pub x: f64,
    pub int_e1: f64,
    pub int_e2: f64,
    pub int_e3: f64,
    /// `e^γ ∫ (e^{E_2} − 1)`
    pub int_e3_identity: f64,
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    /// `∫ E_2`
    pub delta1: f64,
    /// `∫ E_2²`
    pub delta2: f64,
    /// Estimated quadrature error of `delta2`.
    pub delta2_err: f64,
}

impl MeanValueReport {
    pub const CSV_HEADER: &'static str = "X,f1,f2,f3,int_E1,int_E2,int_E3,delta1,delta2";

    /// `Δ_1 < e^{−γ} e^γ∫(e^{E_2}−1) < Δ_1 + Δ_2`, allowing for the
    /// quadrature error of `Δ_2`.
    pub fn sandwich_holds(&self, gamma: f64) -> bool {
        let mid = (-gamma).exp() * self.int_e3_identity;
        self.delta1 < mid && mid < self.delta1 + self.delta2 - self.delta2_err
    }
}

/// Every how many gaps the 8-point rule for `Δ_2` is checked against the
/// 16-point rule.
const REFINE_EVERY: u64 = 100;

/// Integrates `E_1, E_2, E_3` exactly between consecutive events.
///
/// On a gap where the prime sums are constant, `∫ E_3 = P·(li b − li a) −
/// e^γ (b − a)` with `P = Π(1 − 1/p)^{−1}`; `∫ E_1` and `∫ E_2` are assembled
/// at checkpoints from the closed forms in `θ`, `π`, `log` and `li`.
pub struct MeanValueObserver {
    c: MertensConstants,
    exp_gamma: f64,
    sums: PrimeSums,
    pos: f64,
    int_e3: DoubleDouble,
    int_e3_identity: DoubleDouble,
    delta2: DoubleDouble,
    gaps: u64,
    refined: u64,
    refine_diff: f64,
    reports: Vec<MeanValueReport>,
}

impl MeanValueObserver {
    pub fn new(c: MertensConstants) -> Self {
        Self {
            c,
            exp_gamma: c.gamma.exp(),
            sums: PrimeSums::default(),
            pos: 2.0,
            int_e3: DoubleDouble::ZERO,
            int_e3_identity: DoubleDouble::ZERO,
            delta2: DoubleDouble::ZERO,
            gaps: 0,
            refined: 0,
            refine_diff: 0.0,
            reports: Vec::new(),
        }
    }

    pub fn reports(&self) -> &[MeanValueReport] {
        &self.reports
    }

    pub fn into_reports(self) -> Vec<MeanValueReport> {
        self.reports
    }

    fn report_at(&self, x: f64) -> MeanValueReport {
        let c = &self.c;
        let s = &self.sums;
        let lx = x.ln();
        let ln2 = std::f64::consts::LN_2;
        let li2 = li(2.0).expect("li(2)");
        let e1 = (s.logp_over_p - lx - c.e1).to_f64();
        let e2 = (s.recip - lx.ln() - c.e2).to_f64();
        let theta_minus_x = (s.theta - x).to_f64();
        let pi_minus_li = s.pi as f64 - li(x).expect("x >= 2");
        let int_e1 = x * e1 - theta_minus_x + 2.0 * ln2 - 2.0 + 2.0 * c.e1;
        let int_e2 = x * e2 - pi_minus_li + 2.0 * c.e2 + 2.0 * ln2.ln() - li2;
        let int_e3 = self.int_e3.to_f64();
        let sqrt_x = x.sqrt();
        let delta2_err = if self.refined == 0 {
            0.0
        } else {
            self.refine_diff * self.gaps as f64 / self.refined as f64
        };
        MeanValueReport {
            x,
            int_e1,
            int_e2,
            int_e3,
            int_e3_identity: self.int_e3_identity.to_f64(),
            f1: int_e1 / sqrt_x,
            f2: lx / sqrt_x * int_e2,
            f3: lx / (self.exp_gamma * sqrt_x) * int_e3,
            delta1: int_e2,
            delta2: self.delta2.to_f64(),
            delta2_err,
        }
    }
}

impl PrimeObserver for MeanValueObserver {
    fn advance(&mut self, to: f64) {
        let (a, b) = (self.pos, to);
        if b <= a {
            return;
        }
        self.pos = b;
        let s2 = self.sums.recip.to_f64();
        let product = (-self.sums.log_one_minus.to_f64()).exp();
        let li_ab = li_diff(a, b);
        let g = self.exp_gamma;
        self.int_e3 += product * li_ab - g * (b - a);
        let c = s2 - self.c.e2;
        self.int_e3_identity += g * (c.exp() * li_ab - (b - a));
        let sq = |x: f64| {
            let e = c - x.ln().ln();
            e * e
        };
        let d8 = gl8().integrate(a, b, sq);
        self.delta2 += d8;
        self.gaps += 1;
        if self.gaps % REFINE_EVERY == 1 {
            self.refined += 1;
            self.refine_diff += (gl16().integrate(a, b, sq) - d8).abs();
        }
    }

    fn on_prime(&mut self, p: u64) {
        self.sums.add_prime(p);
    }

    fn on_prime_power(&mut self, p: u64, k: u32, n: u64) {
        self.sums.add_prime_power(p, k, n);
    }

    fn on_checkpoint(&mut self, x: f64) {
        let r = self.report_at(x);
        self.reports.push(r);
    }
}

/// Mean values at the single cut `X`.
pub fn mean_values(x: f64, c: MertensConstants, options: SweepOptions) -> Result<MeanValueReport> {
    if !(x > 2.0) || !x.is_finite() {
        return Err(Error::precondition(format!("mean values need X > 2, got {x}")));
    }
    let mut obs = MeanValueObserver::new(c);
    sweep(x.ceil() as u64, &[x], options, &mut [&mut obs])?;
    Ok(obs.reports[0])
}

#[cfg(test)]
mod tests {
    use super::super::CheckpointGrid;
    use super::*;
    use crate::arith::primes_up_to;
    use crate::quad::adaptive;
    use crate::special::mertens_constants;

    #[test]
    fn matches_quadrature_oracle() {
        let c = mertens_constants();
        let top = 10_000usize;
        // prime sums on [n, n+1) by direct summation
        let mut table = vec![(0.0f64, 0.0f64, 1.0f64); top + 1];
        let primes = primes_up_to(top as u64);
        let mut acc = (0.0, 0.0, 1.0);
        let mut it = primes.iter().peekable();
        for (n, slot) in table.iter_mut().enumerate() {
            while let Some(&&p) = it.peek() {
                if p as usize > n {
                    break;
                }
                let p = p as f64;
                acc = (acc.0 + p.ln() / p, acc.1 + 1.0 / p, acc.2 * p / (p - 1.0));
                it.next();
            }
            *slot = acc;
        }
        let cuts = [2.5, 3.0, 10.0, 97.5, 1000.0, 4321.0, 10_000.0];
        let mut obs = MeanValueObserver::new(c);
        sweep(10_000, &cuts, SweepOptions::default(), &mut [&mut obs]).unwrap();
        for r in obs.reports() {
            let mut oracle = [0.0f64; 4];
            let mut a = 2.0f64;
            while a < r.x {
                let b = (a.floor() + 1.0).min(r.x);
                let (s1, s2, prod) = table[a.floor() as usize];
                for (i, slot) in oracle.iter_mut().enumerate() {
                    let q = adaptive(
                        |x| {
                            let lx = x.ln();
                            let e2 = s2 - lx.ln() - c.e2;
                            match i {
                                0 => s1 - lx - c.e1,
                                1 => e2,
                                2 => prod / lx - c.gamma.exp(),
                                _ => e2 * e2,
                            }
                        },
                        a,
                        b,
                        1e-15,
                        1e-14,
                    );
                    *slot += q.value;
                }
                a = b;
            }
            let rel = |got: f64, want: f64| (got - want).abs() / want.abs().max(1e-3);
            for (got, want) in [r.int_e1, r.int_e2, r.int_e3, r.delta2].into_iter().zip(oracle) {
                assert!(rel(got, want) < 1e-9, "{r:?} {oracle:?}");
            }
        }
    }

    #[test]
    fn positive_means_and_sandwich() {
        let c = mertens_constants();
        let grid = CheckpointGrid::default().points(200_000).unwrap();
        let mut obs = MeanValueObserver::new(c);
        sweep(200_000, &grid, SweepOptions::default(), &mut [&mut obs]).unwrap();
        for r in obs.reports().iter().filter(|r| r.x > 2.0) {
            assert!(r.int_e1 > 0.0 && r.int_e2 > 0.0 && r.int_e3 > 0.0, "{r:?}");
            assert!(r.sandwich_holds(c.gamma), "{r:?}");
            assert!(r.delta2_err < 1e-10 * r.delta2.max(1.0));
        }
    }

    #[test]
    fn single_cut() {
        let c = mertens_constants();
        let r = mean_values(5000.5, c, SweepOptions::default()).unwrap();
        assert_eq!(r.x, 5000.5);
        assert!(mean_values(2.0, c, SweepOptions::default()).is_err());
    }
}
