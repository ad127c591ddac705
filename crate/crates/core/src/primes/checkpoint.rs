use std::str::FromStr;

use serde::Serialize;

use super::PrimeObserver;
use crate::dd::DoubleDouble;
use crate::error::{Error, Result};

/// Running sums over primes and prime powers.
#[derive(Clone, Copy, Debug, Default)]
pub struct PrimeSums {
    pub pi: u64,
    pub theta: DoubleDouble,
    pub psi: DoubleDouble,
    /// Σ Λ(n)/log n over prime powers.
    pub big_pi: DoubleDouble,
    pub recip: DoubleDouble,
    pub logp_over_p: DoubleDouble,
    pub log_one_minus: DoubleDouble,
    pub lambda_over_n: DoubleDouble,
    pub lambda_over_n_log_n: DoubleDouble,
}

impl PrimeSums {
    pub fn add_prime(&mut self, p: u64) {
        let pf = p as f64;
        let lp = pf.ln();
        let r = DoubleDouble::ONE / pf;
        let lp_over_p = r * lp;
        self.pi += 1;
        self.theta += lp;
        self.psi += lp;
        self.big_pi += 1.0;
        self.recip += r;
        self.logp_over_p += lp_over_p;
        self.log_one_minus += (-1.0 / pf).ln_1p();
        self.lambda_over_n += lp_over_p;
        self.lambda_over_n_log_n += r;
    }

    pub fn add_prime_power(&mut self, p: u64, k: u32, n: u64) {
        let lp = (p as f64).ln();
        let r = DoubleDouble::ONE / n as f64;
        self.psi += lp;
        self.big_pi += 1.0 / k as f64;
        self.lambda_over_n += r * lp;
        self.lambda_over_n_log_n += r / k as f64;
    }

    pub fn snapshot(&self, x: f64) -> PrimeCheckpoint {
        PrimeCheckpoint {
            x,
            pi_x: self.pi,
            theta_x: self.theta.to_f64(),
            psi_x: self.psi.to_f64(),
            big_pi_x: self.big_pi.to_f64(),
            sum_recip: self.recip.to_f64(),
            sum_logp_over_p: self.logp_over_p.to_f64(),
            sum_log_one_minus: self.log_one_minus.to_f64(),
            sum_lambda_over_n: self.lambda_over_n.to_f64(),
            sum_lambda_over_n_log_n: self.lambda_over_n_log_n.to_f64(),
        }
    }
}

/// All streaming prime sums at one abscissa `x` (sums over `p <= x`).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrimeCheckpoint {
    pub x: f64,
    pub pi_x: u64,
    pub theta_x: f64,
    pub psi_x: f64,
    pub big_pi_x: f64,
    pub sum_recip: f64,
    pub sum_logp_over_p: f64,
    pub sum_log_one_minus: f64,
    pub sum_lambda_over_n: f64,
    pub sum_lambda_over_n_log_n: f64,
}

impl PrimeCheckpoint {
    pub const CSV_HEADER: &'static str = "x,pi,theta,psi,big_pi,sum_recip,sum_logp_over_p,sum_log_one_minus";
}

/// Records a [`PrimeCheckpoint`] at every checkpoint of a sweep.
#[derive(Default)]
pub struct CheckpointCollector {
    sums: PrimeSums,
    out: Vec<PrimeCheckpoint>,
}

impl CheckpointCollector {
    pub fn checkpoints(&self) -> &[PrimeCheckpoint] {
        &self.out
    }

    pub fn into_checkpoints(self) -> Vec<PrimeCheckpoint> {
        self.out
    }
}

impl PrimeObserver for CheckpointCollector {
    fn on_prime(&mut self, p: u64) {
        self.sums.add_prime(p);
    }
    fn on_prime_power(&mut self, p: u64, k: u32, n: u64) {
        self.sums.add_prime_power(p, k, n);
    }
    fn on_checkpoint(&mut self, x: f64) {
        self.out.push(self.sums.snapshot(x));
    }
}

/// Where checkpoints are placed.
#[derive(Clone, Debug, PartialEq)]
pub enum CheckpointGrid {
    /// `2·ratio^k`, merged with every prime below `small_primes_below`.
    Geometric { ratio: f64, small_primes_below: u64 },
    /// `2, 2+step, 2+2·step, ...`
    Linear { step: f64 },
    Explicit(Vec<f64>),
}

impl Default for CheckpointGrid {
    fn default() -> Self {
        CheckpointGrid::Geometric {
            ratio: 1.001,
            small_primes_below: 10_000,
        }
    }
}

impl CheckpointGrid {
    /// Sorted, deduplicated points in `[2, x_max]`; always ends at `x_max`.
    pub fn points(&self, x_max: u64) -> Result<Vec<f64>> {
        let top = x_max as f64;
        let mut pts = Vec::new();
        match self {
            CheckpointGrid::Geometric {
                ratio,
                small_primes_below,
            } => {
                if !(*ratio > 1.0) {
                    return Err(Error::precondition("geometric grid ratio must exceed 1"));
                }
                let mut k = 0;
                loop {
                    let x = 2.0 * ratio.powi(k);
                    if x > top {
                        break;
                    }
                    pts.push(x);
                    k += 1;
                }
                let below = (*small_primes_below).min(x_max + 1);
                pts.extend(
                    crate::arith::primes_up_to(below.saturating_sub(1))
                        .into_iter()
                        .map(|p| p as f64),
                );
            }
            CheckpointGrid::Linear { step } => {
                if !(*step > 0.0) {
                    return Err(Error::precondition("linear grid step must be positive"));
                }
                let mut k = 0u64;
                loop {
                    let x = 2.0 + k as f64 * step;
                    if x > top {
                        break;
                    }
                    pts.push(x);
                    k += 1;
                }
            }
            CheckpointGrid::Explicit(v) => {
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(Error::precondition("grid points must be finite"));
                }
                pts.extend(v.iter().copied().filter(|&x| (2.0..=top).contains(&x)));
            }
        }
        pts.push(top);
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        Ok(pts)
    }
}

impl FromStr for CheckpointGrid {
    type Err = Error;

    /// `geometric:<ratio>`, `linear:<step>` or `default`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::precondition(format!("bad grid spec {s:?}; use geometric:<ratio> or linear:<step>"));
        if s == "default" {
            return Ok(Self::default());
        }
        let (kind, value) = s.split_once(':').ok_or_else(bad)?;
        let value: f64 = value.trim().parse().map_err(|_| bad())?;
        match kind.trim() {
            "geometric" if value > 1.0 => Ok(CheckpointGrid::Geometric {
                ratio: value,
                small_primes_below: 10_000,
            }),
            "linear" if value > 0.0 => Ok(CheckpointGrid::Linear { step: value }),
            _ => Err(bad()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{stream_checkpoints, SweepOptions};
    use super::*;

    #[test]
    fn sums_up_to_ten() {
        let cps = stream_checkpoints(10, &CheckpointGrid::Explicit(vec![]), SweepOptions::default()).unwrap();
        assert_eq!(cps.len(), 1);
        let c = cps[0];
        assert_eq!(c.x, 10.0);
        assert_eq!(c.pi_x, 4);
        assert!((c.theta_x - 210f64.ln()).abs() < 1e-15);
        // prime powers 4, 8, 9
        assert!((c.psi_x - 2520f64.ln()).abs() < 1e-14);
        assert!((c.big_pi_x - (4.0 + 0.5 + 1.0 / 3.0 + 0.5)).abs() < 1e-15);
        let recip = 0.5 + 1.0 / 3.0 + 0.2 + 1.0 / 7.0;
        assert!((c.sum_recip - recip).abs() < 1e-15);
    }

    #[test]
    fn psi_minus_theta_at_100() {
        let cps = stream_checkpoints(100, &CheckpointGrid::Explicit(vec![]), SweepOptions::default()).unwrap();
        let mut expected = 0.0;
        for p in crate::arith::primes_up_to(100) {
            let mut n = p * p;
            while n <= 100 {
                expected += (p as f64).ln();
                n *= p;
            }
        }
        let c = cps[0];
        assert!((c.psi_x - c.theta_x - expected).abs() < 1e-12);
        // 2^6, 3^4, 5^2, 7^2 are the top powers
        let direct = 5.0 * 2f64.ln() + 3.0 * 3f64.ln() + 5f64.ln() + 7f64.ln();
        assert!((expected - direct).abs() < 1e-12);
    }

    #[test]
    fn brute_force_sums() {
        let x = 20_000u64;
        let grid = CheckpointGrid::Linear { step: 777.0 };
        let cps = stream_checkpoints(x, &grid, SweepOptions::default()).unwrap();
        let primes = crate::arith::primes_up_to(x);
        for c in &cps {
            let ps: Vec<f64> = primes.iter().filter(|&&p| p as f64 <= c.x).map(|&p| p as f64).collect();
            assert_eq!(c.pi_x as usize, ps.len());
            let recip: f64 = ps.iter().map(|p| 1.0 / p).sum();
            let lpp: f64 = ps.iter().map(|p| p.ln() / p).sum();
            let l1m: f64 = ps.iter().map(|p| (1.0 - 1.0 / p).ln()).sum();
            assert!((c.sum_recip - recip).abs() < 1e-12);
            assert!((c.sum_logp_over_p - lpp).abs() < 1e-12);
            assert!((c.sum_log_one_minus - l1m).abs() < 1e-12);
        }
        for w in cps.windows(2) {
            assert!(w[0].theta_x <= w[1].theta_x && w[0].psi_x <= w[1].psi_x);
            assert!(w[0].sum_recip <= w[1].sum_recip);
        }
    }

    #[test]
    fn psi_theta_gap_lower_bound() {
        let cps = stream_checkpoints(200_000, &CheckpointGrid::default(), SweepOptions::default()).unwrap();
        for c in cps.iter().filter(|c| c.x >= 121.0) {
            assert!(c.psi_x - c.theta_x > 0.98 * c.x.sqrt(), "x = {}", c.x);
        }
    }

    #[test]
    fn grid_points() {
        let g = CheckpointGrid::default().points(100).unwrap();
        assert_eq!(g.first(), Some(&2.0));
        assert_eq!(g.last(), Some(&100.0));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(g.contains(&97.0));
        let l: CheckpointGrid = "linear:10".parse().unwrap();
        assert_eq!(l.points(25).unwrap(), vec![2.0, 12.0, 22.0, 25.0]);
        assert!("geometric:0.5".parse::<CheckpointGrid>().is_err());
        assert!("cubic:2".parse::<CheckpointGrid>().is_err());
    }
}
