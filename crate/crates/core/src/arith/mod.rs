//! Integer and character arithmetic.

mod characters;
mod kronecker;

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use characters::{root_of_unity, CharacterGroup, DirichletCharacter};
pub use kronecker::{is_fundamental, kronecker, FundamentalDiscriminant, KroneckerTable};

const SMALL_PRIME_LIMIT: usize = 1_000_000;

/// Primes below 10^6, used for trial division.
pub fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(SMALL_PRIME_LIMIT as u64))
}

/// Plain sieve of Eratosthenes; fine for the small tables used here.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Prime factorisation as `(p, k)` pairs with `p` ascending.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factor(0)");
    let mut out = Vec::new();
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            out.push((p, k));
        }
    }
    if n > 1 {
        // remaining cofactor is prime as long as n < 10^12
        out.push((n, 1));
    }
    out
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn totient(q: u64) -> u64 {
    factor(q)
        .into_iter()
        .fold(q, |acc, (p, _)| acc / p * (p - 1))
}

/// Möbius function.
pub fn mobius(n: u64) -> i8 {
    let mut sign = 1;
    for (_, k) in factor(n) {
        if k > 1 {
            return 0;
        }
        sign = -sign;
    }
    sign
}

pub fn is_squarefree(n: u64) -> bool {
    factor(n).iter().all(|&(_, k)| k == 1)
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m128;
        }
        b = b * b % m128;
        exp >>= 1;
    }
    base = acc as u64;
    base
}

/// Number of solutions of `b² ≡ a (mod p^k)` for `gcd(a, p) = 1`.
fn local_root_count(a: u64, p: u64, k: u32) -> u64 {
    if p == 2 {
        match k {
            1 => 1,
            2 => u64::from(a % 4 == 1) * 2,
            _ => u64::from(a % 8 == 1) * 4,
        }
    } else {
        // Hensel: the count mod p^k equals the count mod p
        let legendre = mod_pow(a % p, (p - 1) / 2, p);
        if legendre == 1 {
            2
        } else {
            0
        }
    }
}

/// `C(q, a) = #{ 1 <= b <= q-1 : b² ≡ a (mod q) }` for `gcd(a, q) = 1`.
pub fn c_count(q: u64, a: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::precondition(format!("c_count: modulus {q} < 2")));
    }
    if gcd(a % q, q) != 1 {
        return Err(Error::precondition(format!(
            "c_count: gcd({a}, {q}) != 1"
        )));
    }
    // b = 0 is never a root when a is a unit, so counting all residues is the same
    Ok(factor(q)
        .into_iter()
        .map(|(p, k)| local_root_count(a % p.pow(k), p, k))
        .product())
}

/// Closed form of `C(q, 1)` in terms of `ω(q)` and `ν_2(q)`.
pub fn c_count_one_formula(q: u64) -> u64 {
    let f = factor(q);
    let omega = f.len() as u32;
    let nu2 = f.iter().find(|&&(p, _)| p == 2).map_or(0, |&(_, k)| k);
    match nu2 {
        0 | 2 => 1 << omega,
        1 => 1 << (omega - 1),
        _ => 1 << (omega + 1),
    }
}

/// Number of primitive characters modulo `q`:
/// `q ∏_{p || q} (1 - 2/p) ∏_{p² | q} (1 - 1/p)²`.
pub fn primitive_count(q: u64) -> u64 {
    assert!(q >= 1);
    factor(q)
        .into_iter()
        .map(|(p, k)| {
            if k == 1 {
                p.saturating_sub(2)
            } else {
                p.pow(k - 2) * (p - 1) * (p - 1)
            }
        })
        .product()
}

/// All characters modulo `q`.
pub fn characters(q: u64) -> Vec<DirichletCharacter> {
    CharacterGroup::new(q).characters()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c_count_brute(q: u64, a: u64) -> u64 {
        (1..q).filter(|b| (b * b) % q == a % q).count() as u64
    }

    #[test]
    fn c_count_examples() {
        assert_eq!(c_count(8, 1).unwrap(), 4);
        assert_eq!(c_count(5, 4).unwrap(), 2);
        assert_eq!(c_count(12, 1).unwrap(), 4);
        assert_eq!(c_count_one_formula(12), 4);
        assert!(c_count(12, 3).is_err());
        assert!(c_count(1, 1).is_err());
    }

    #[test]
    fn c_count_matches_brute_force_small() {
        for q in 2..300u64 {
            for a in 1..q {
                if gcd(a, q) == 1 {
                    assert_eq!(c_count(q, a).unwrap(), c_count_brute(q, a), "q={q} a={a}");
                }
            }
        }
    }

    #[test]
    fn primitive_count_examples() {
        assert_eq!(primitive_count(5), 3);
        assert_eq!(primitive_count(2), 0);
        assert_eq!(primitive_count(6), 0);
        assert_eq!(primitive_count(1), 1);
        assert_eq!(primitive_count(4), 1);
        assert_eq!(primitive_count(8), 2);
    }

    #[test]
    fn factor_and_totient() {
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(999_983 * 1_000_003), vec![(999_983, 1), (1_000_003, 1)]);
        assert_eq!(totient(1), 1);
        assert_eq!(totient(24), 8);
        assert_eq!(totient(97), 96);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(1), 1);
    }
}
