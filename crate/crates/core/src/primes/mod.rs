//! Streaming prime sums, Mertens error terms and their exact mean values.
//!
//! A sweep enumerates the primes and prime powers up to `x_max` in order and
//! reports them to a set of [`PrimeObserver`]s, interleaved with the
//! checkpoints of a grid. Between two consecutive events every running sum is
//! constant, which is what makes the piecewise integration exact.

mod checkpoint;
mod mean;
mod mertens;
mod progression;
pub mod sieve;
mod tails;
mod twisted;

pub use checkpoint::{CheckpointCollector, CheckpointGrid, PrimeCheckpoint, PrimeSums};
pub use mean::{mean_values, MeanValueObserver, MeanValueReport};
pub use mertens::{mertens_errors, MertensErrors, PositivityReport, PositivitySweep};
pub use progression::{ProgressionObserver, ProgressionRow};
pub use tails::{tail_integrals, theta_log2_integral, TailIntegrals};
pub use twisted::{TwistedObserver, TwistedRow};

use crate::error::{Error, Result};

/// Receives the events of a sweep in increasing order of abscissa.
pub trait PrimeObserver {
    /// All running sums are constant on `[previous position, to)`.
    fn advance(&mut self, _to: f64) {}
    fn on_prime(&mut self, p: u64);
    /// `n = p^k` with `k >= 2`.
    fn on_prime_power(&mut self, _p: u64, _k: u32, _n: u64) {}
    /// Every event `<= x` has been delivered and `advance(x)` was called.
    fn on_checkpoint(&mut self, _x: f64) {}
}

#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    pub workers: usize,
    pub segment: u64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            workers: 1,
            segment: sieve::DEFAULT_SEGMENT,
        }
    }
}

/// Largest `x_max` accepted by a sweep.
pub const MAX_SWEEP: u64 = 10_000_000_000;

/// Runs one sweep over `[2, x_max]`, calling every observer on every event.
pub fn sweep(
    x_max: u64,
    grid: &[f64],
    options: SweepOptions,
    observers: &mut [&mut dyn PrimeObserver],
) -> Result<()> {
    if x_max < 2 {
        return Err(Error::precondition(format!("sweep needs x_max >= 2, got {x_max}")));
    }
    if x_max > MAX_SWEEP {
        return Err(Error::precondition(format!(
            "sweep limited to x_max <= {MAX_SWEEP}, got {x_max}"
        )));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::precondition("checkpoint grid must be strictly increasing"));
    }
    if grid.first().is_some_and(|&x| x < 2.0) || grid.last().is_some_and(|&x| x > x_max as f64) {
        return Err(Error::precondition("checkpoints must lie in [2, x_max]"));
    }
    let powers = prime_powers(x_max);
    let mut next_power = 0;
    let mut next_check = 0;
    let emit_checks_below = |n: f64, obs: &mut [&mut dyn PrimeObserver], next_check: &mut usize| {
        while *next_check < grid.len() && grid[*next_check] < n {
            let x = grid[*next_check];
            for o in obs.iter_mut() {
                o.advance(x);
                o.on_checkpoint(x);
            }
            *next_check += 1;
        }
    };
    sieve::for_each_prime(x_max, options.workers, options.segment, |p| {
        while next_power < powers.len() && powers[next_power].2 < p {
            let (q, k, n) = powers[next_power];
            emit_checks_below(n as f64, observers, &mut next_check);
            for o in observers.iter_mut() {
                o.advance(n as f64);
                o.on_prime_power(q, k, n);
            }
            next_power += 1;
        }
        emit_checks_below(p as f64, observers, &mut next_check);
        for o in observers.iter_mut() {
            o.advance(p as f64);
            o.on_prime(p);
        }
    });
    while next_power < powers.len() {
        let (q, k, n) = powers[next_power];
        emit_checks_below(n as f64, observers, &mut next_check);
        for o in observers.iter_mut() {
            o.advance(n as f64);
            o.on_prime_power(q, k, n);
        }
        next_power += 1;
    }
    emit_checks_below(f64::INFINITY, observers, &mut next_check);
    Ok(())
}

/// All `(p, k, p^k)` with `k >= 2` and `p^k <= x`, sorted by `p^k`.
fn prime_powers(x: u64) -> Vec<(u64, u32, u64)> {
    let root = (x as f64).sqrt() as u64 + 1;
    let mut out = Vec::new();
    for p in crate::arith::primes_up_to(root) {
        let mut n = p * p;
        let mut k = 2;
        while n <= x {
            out.push((p, k, n));
            match n.checked_mul(p) {
                Some(m) => n = m,
                None => break,
            }
            k += 1;
        }
    }
    out.sort_unstable_by_key(|t| t.2);
    out
}

/// Collects a [`PrimeCheckpoint`] at every grid point.
pub fn stream_checkpoints(
    x_max: u64,
    grid: &CheckpointGrid,
    options: SweepOptions,
) -> Result<Vec<PrimeCheckpoint>> {
    let points = grid.points(x_max)?;
    let mut collector = CheckpointCollector::default();
    sweep(x_max, &points, options, &mut [&mut collector])?;
    Ok(collector.into_checkpoints())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Default)]
    struct Log(Vec<String>);

    impl PrimeObserver for Log {
        fn on_prime(&mut self, p: u64) {
            self.0.push(format!("p{p}"));
        }
        fn on_prime_power(&mut self, _p: u64, _k: u32, n: u64) {
            self.0.push(format!("q{n}"));
        }
        fn on_checkpoint(&mut self, x: f64) {
            self.0.push(format!("c{x}"));
        }
    }

    #[test]
    fn events_are_ordered() {
        let mut log = Log::default();
        sweep(10, &[2.0, 4.0, 4.5, 10.0], SweepOptions::default(), &mut [&mut log]).unwrap();
        assert_eq!(
            log.0.join(" "),
            "p2 c2 p3 q4 c4 c4.5 p5 p7 q8 q9 c10"
        );
    }

    #[test]
    fn rejects_bad_grids() {
        let mut log = Log::default();
        assert!(sweep(10, &[3.0, 2.5], SweepOptions::default(), &mut [&mut log]).is_err());
        assert!(sweep(10, &[11.0], SweepOptions::default(), &mut [&mut log]).is_err());
        assert!(sweep(1, &[], SweepOptions::default(), &mut [&mut log]).is_err());
    }
}
