//! Segmented odd-only sieve of Eratosthenes.

use rayon::prelude::*;

use crate::arith::primes_up_to;

/// Odd numbers per segment; one byte each.
pub const DEFAULT_SEGMENT: u64 = 1 << 18;

/// Primes in `[lo, hi)` for odd `lo`, using base primes up to `√hi`.
fn sieve_segment(lo: u64, hi: u64, base: &[u64]) -> Vec<u64> {
    debug_assert!(lo % 2 == 1);
    let len = ((hi - lo) as usize).div_ceil(2);
    let mut composite = vec![false; len];
    for &p in base.iter().skip(1) {
        if p * p >= hi {
            break;
        }
        // first odd multiple of p that is >= max(lo, p²)
        let mut start = (p * p).max(lo.div_ceil(p) * p);
        if start % 2 == 0 {
            start += p;
        }
        let mut i = ((start - lo) / 2) as usize;
        while i < len {
            composite[i] = true;
            i += p as usize;
        }
    }
    composite
        .iter()
        .enumerate()
        .filter(|&(_, &c)| !c)
        .map(|(i, _)| lo + 2 * i as u64)
        .filter(|&n| n > 1 && n < hi)
        .collect()
}

/// Calls `f` on every prime `p <= x_max` in increasing order.
///
/// Segments are sieved in parallel batches of `workers` segments; results are
/// handed to `f` strictly in order, so the callback sees the same sequence for
/// any worker count or segment length.
pub fn for_each_prime<F: FnMut(u64)>(x_max: u64, workers: usize, segment: u64, mut f: F) {
    if x_max < 2 {
        return;
    }
    f(2);
    let root = (x_max as f64).sqrt() as u64 + 2;
    let base = primes_up_to(root);
    let span = 2 * segment.max(16);
    let end = x_max + 1;
    let workers = workers.max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool");
    let mut lo = 3;
    while lo < end {
        let starts: Vec<u64> = (0..workers as u64 * 2)
            .map(|i| lo + i * span)
            .take_while(|&s| s < end)
            .collect();
        let batch: Vec<Vec<u64>> = pool.install(|| {
            starts
                .par_iter()
                .map(|&s| sieve_segment(s, (s + span).min(end), &base))
                .collect()
        });
        for seg in batch {
            for p in seg {
                f(p);
            }
        }
        lo = starts.last().copied().unwrap_or(lo) + span;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(x: u64, workers: usize, seg: u64) -> Vec<u64> {
        let mut v = Vec::new();
        for_each_prime(x, workers, seg, |p| v.push(p));
        v
    }

    #[test]
    fn matches_simple_sieve() {
        for x in [0u64, 1, 2, 3, 10, 97, 100, 1000, 65_537, 200_003] {
            assert_eq!(collect(x, 1, 64), primes_up_to(x), "x = {x}");
            assert_eq!(collect(x, 3, 1000), primes_up_to(x), "x = {x}");
        }
    }

    #[test]
    fn independent_of_segmentation() {
        let a = collect(3_000_000, 1, DEFAULT_SEGMENT);
        let b = collect(3_000_000, 4, 1 << 12);
        assert_eq!(a, b);
        assert_eq!(a.len(), 216_816);
    }
}
