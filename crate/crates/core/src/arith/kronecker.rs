use crate::error::{Error, Result};

use super::is_squarefree;

/// Kronecker symbol `(d / n)`.
pub fn kronecker(d: i64, n: u64) -> i8 {
    if n == 0 {
        return i8::from(d == 1 || d == -1);
    }
    let mut n = n;
    let mut result: i8 = 1;
    let twos = n.trailing_zeros();
    if twos > 0 {
        if d % 2 == 0 {
            return 0;
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(d.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    if n == 1 {
        return result;
    }
    // Jacobi symbol for odd n; a negative d is reduced mod n first
    let mut a = d.rem_euclid(n as i64) as u64;
    while a != 0 {
        let t = a.trailing_zeros();
        a >>= t;
        if t % 2 == 1 && matches!(n % 8, 3 | 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// True iff `d` is the discriminant of a quadratic field (`d = 1` excluded).
pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// A fundamental discriminant together with the parity of `χ_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FundamentalDiscriminant {
    d: i64,
}

impl FundamentalDiscriminant {
    pub fn new(d: i64) -> Result<Self> {
        if is_fundamental(d) {
            Ok(Self { d })
        } else {
            Err(Error::precondition(format!(
                "{d} is not a fundamental discriminant"
            )))
        }
    }

    pub fn d(self) -> i64 {
        self.d
    }

    /// 0 for real quadratic fields, 1 for imaginary ones.
    pub fn kappa(self) -> u8 {
        u8::from(self.d < 0)
    }

    /// `|d|`, which is also the conductor of `χ_d`.
    pub fn conductor(self) -> u64 {
        self.d.unsigned_abs()
    }

    pub fn chi(self, n: u64) -> i8 {
        kronecker(self.d, n)
    }

    /// All fundamental discriminants with `1 < |d| <= bound`, ascending in `d`.
    pub fn up_to(bound: u64) -> Vec<Self> {
        let b = bound as i64;
        (-b..=b)
            .filter(|&d| is_fundamental(d))
            .map(|d| Self { d })
            .collect()
    }
}

impl std::fmt::Display for FundamentalDiscriminant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.d)
    }
}

/// `χ_d(n)` for `n` in one period, for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct KroneckerTable {
    values: Vec<i8>,
}

impl KroneckerTable {
    pub fn new(d: FundamentalDiscriminant) -> Self {
        let q = d.conductor();
        Self {
            values: (0..q).map(|n| d.chi(n)).collect(),
        }
    }

    #[inline]
    pub fn get(&self, n: u64) -> i8 {
        self.values[(n % self.values.len() as u64) as usize]
    }

    pub fn period(&self) -> u64 {
        self.values.len() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{gcd, mod_pow, primes_up_to};
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(kronecker(5, 1), 1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(8, 7), 1);
        assert!(is_fundamental(5));
        assert!(is_fundamental(-3));
        assert!(is_fundamental(-4));
        assert!(is_fundamental(8));
        assert!(is_fundamental(-8));
        assert!(is_fundamental(12));
        assert!(!is_fundamental(6));
        assert!(!is_fundamental(1));
        assert!(!is_fundamental(-1));
        assert!(!is_fundamental(9));
        assert!(!is_fundamental(-16));
    }

    #[test]
    fn parity_matches_value_at_minus_one() {
        for d in FundamentalDiscriminant::up_to(500) {
            let minus_one = d.conductor() - 1;
            let expected = if d.kappa() == 0 { 1 } else { -1 };
            assert_eq!(d.chi(minus_one), expected, "d = {d}");
        }
    }

    #[test]
    fn counts_up_to_1300() {
        let all = FundamentalDiscriminant::up_to(1300);
        assert!(all.iter().all(|d| d.d() != 0 && d.d() != 1));
        // brute check of the definition for a few d
        for d in [-91i64, -88, -67, -43, -40, 1201] {
            assert!(is_fundamental(d));
        }
    }

    proptest! {
        #[test]
        fn agrees_with_euler_criterion(d in -5000i64..5000, idx in 1usize..200) {
            let primes = primes_up_to(1300);
            let p = primes[idx.min(primes.len() - 1)];
            prop_assume!(p > 2 && gcd(d.unsigned_abs(), p) == 1);
            let a = d.rem_euclid(p as i64) as u64;
            let e = mod_pow(a, (p - 1) / 2, p);
            let legendre = if e == 1 { 1 } else { -1 };
            prop_assert_eq!(kronecker(d, p), legendre);
        }

        #[test]
        fn completely_multiplicative(d in -3000i64..3000, m in 1u64..3000, n in 1u64..3000) {
            prop_assert_eq!(kronecker(d, m * n), kronecker(d, m) * kronecker(d, n));
        }
    }
}
