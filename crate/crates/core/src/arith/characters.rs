//! Dirichlet characters as exponent vectors on CRT generators of `(Z/q)^×`.
//!
//! Each odd prime power `p^k` contributes one cyclic component generated by a
//! primitive root that also generates modulo `p²`. The 2-part contributes
//! nothing for `2`, the component `⟨−1⟩` for `4`, and `⟨−1⟩ × ⟨5⟩` for `2^k`,
//! `k >= 3`. Values are stored as exponents of `e(1/L)` where `L` is the
//! exponent of the group.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::{factor, gcd, mod_pow, totient};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    /// cyclic group mod an odd prime power
    Odd,
    /// `⟨−1⟩` inside `(Z/2^k)^×`
    MinusOne,
    /// `⟨5⟩` inside `(Z/2^k)^×`, `k >= 3`
    Five,
}

#[derive(Clone, Debug)]
struct Component {
    prime: u64,
    power: u32,
    modulus: u64,
    order: u64,
    kind: Kind,
    /// discrete log of each residue mod `modulus`, `NO_LOG` for non-units
    logs: Vec<u32>,
}

const NO_LOG: u32 = u32::MAX;

fn primitive_root_mod_prime(p: u64) -> u64 {
    let phi = p - 1;
    let divisors: Vec<u64> = factor(phi).into_iter().map(|(r, _)| r).collect();
    (2..p)
        .find(|&g| divisors.iter().all(|&r| mod_pow(g, phi / r, p) != 1))
        .unwrap_or(1)
}

impl Component {
    fn odd(p: u64, k: u32) -> Self {
        let modulus = p.pow(k);
        let mut g = primitive_root_mod_prime(p);
        if k >= 2 && mod_pow(g, p - 1, p * p) == 1 {
            g += p;
        }
        let order = modulus / p * (p - 1);
        let mut logs = vec![NO_LOG; modulus as usize];
        let mut x = 1u64;
        for e in 0..order {
            logs[x as usize] = e as u32;
            x = x * g % modulus;
        }
        Self {
            prime: p,
            power: k,
            modulus,
            order,
            kind: Kind::Odd,
            logs,
        }
    }

    /// The two components of `(Z/2^k)^×`, or one for `k = 2`.
    fn two_adic(k: u32) -> Vec<Self> {
        let modulus = 1u64 << k;
        if k == 1 {
            return Vec::new();
        }
        let five_order = if k >= 3 { modulus / 4 } else { 1 };
        let mut minus_logs = vec![NO_LOG; modulus as usize];
        let mut five_logs = vec![NO_LOG; modulus as usize];
        let mut five_pow = 1u64;
        for b in 0..five_order {
            minus_logs[five_pow as usize] = 0;
            minus_logs[(modulus - five_pow) as usize] = 1;
            five_logs[five_pow as usize] = b as u32;
            five_logs[(modulus - five_pow) as usize] = b as u32;
            five_pow = five_pow * 5 % modulus;
        }
        let mut out = vec![Self {
            prime: 2,
            power: k,
            modulus,
            order: 2,
            kind: Kind::MinusOne,
            logs: minus_logs,
        }];
        if k >= 3 {
            out.push(Self {
                prime: 2,
                power: k,
                modulus,
                order: five_order,
                kind: Kind::Five,
                logs: five_logs,
            });
        }
        out
    }
}

/// The character group modulo `q` with its discrete-log tables.
pub struct CharacterGroup {
    modulus: u64,
    components: Vec<Component>,
    exponent: u64,
}

impl fmt::Debug for CharacterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CharacterGroup")
            .field("modulus", &self.modulus)
            .field("exponent", &self.exponent)
            .finish()
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl CharacterGroup {
    pub fn new(q: u64) -> Arc<Self> {
        assert!(q >= 1, "modulus must be positive");
        let mut components = Vec::new();
        for (p, k) in factor(q) {
            if p == 2 {
                components.extend(Component::two_adic(k));
            } else {
                components.push(Component::odd(p, k));
            }
        }
        let exponent = components.iter().fold(1, |acc, c| lcm(acc, c.order));
        Arc::new(Self {
            modulus: q,
            components,
            exponent,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Exponent of `(Z/q)^×`; character values are powers of `e(1/exponent)`.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> u64 {
        totient(self.modulus)
    }

    fn index_to_exponents(&self, mut index: u64) -> Vec<u64> {
        self.components
            .iter()
            .map(|c| {
                let e = index % c.order;
                index /= c.order;
                e
            })
            .collect()
    }

    fn exponents_to_index(&self, exps: &[u64]) -> u64 {
        self.components
            .iter()
            .zip(exps)
            .rev()
            .fold(0, |acc, (c, &e)| acc * c.order + e)
    }

    /// Character number `index`, `0 <= index < φ(q)`; index 0 is principal.
    pub fn character(self: &Arc<Self>, index: u64) -> DirichletCharacter {
        assert!(index < self.order(), "character index out of range");
        DirichletCharacter::from_exponents(self.clone(), self.index_to_exponents(index))
    }

    pub fn characters(self: &Arc<Self>) -> Vec<DirichletCharacter> {
        (0..self.order()).map(|i| self.character(i)).collect()
    }
}

/// A Dirichlet character modulo `q`.
#[derive(Clone)]
pub struct DirichletCharacter {
    group: Arc<CharacterGroup>,
    exponents: Vec<u64>,
    conductor: u64,
    order: u64,
}

impl fmt::Debug for DirichletCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DirichletCharacter")
            .field("modulus", &self.modulus())
            .field("index", &self.index())
            .field("conductor", &self.conductor)
            .field("order", &self.order)
            .finish()
    }
}

impl PartialEq for DirichletCharacter {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exponents == other.exponents
    }
}

impl Eq for DirichletCharacter {}

impl DirichletCharacter {
    fn from_exponents(group: Arc<CharacterGroup>, exponents: Vec<u64>) -> Self {
        let mut conductor = 1;
        let mut order = 1;
        let comps = &group.components;
        let mut i = 0;
        while i < comps.len() {
            let c = &comps[i];
            let e = exponents[i];
            order = lcm(order, c.order / gcd(e, c.order));
            match c.kind {
                Kind::Odd => {
                    if e != 0 {
                        let ord = c.order / gcd(e, c.order);
                        let mut m = 1;
                        let mut pm1 = 1; // p^{m-1}
                        while ((c.prime - 1) * pm1) % ord != 0 {
                            m += 1;
                            pm1 *= c.prime;
                        }
                        debug_assert!(m <= c.power);
                        conductor *= c.prime.pow(m);
                    }
                    i += 1;
                }
                Kind::MinusOne => {
                    let five = comps.get(i + 1).filter(|n| n.kind == Kind::Five);
                    let b = five.map_or(0, |_| exponents[i + 1]);
                    if let Some(f) = five {
                        order = lcm(order, f.order / gcd(b, f.order));
                    }
                    if b != 0 {
                        let f = five.expect("nonzero exponent implies component");
                        let ord_b = f.order / gcd(b, f.order);
                        conductor *= 4 * ord_b;
                    } else if e == 1 {
                        conductor *= 4;
                    }
                    i += if five.is_some() { 2 } else { 1 };
                }
                Kind::Five => unreachable!("⟨5⟩ always follows ⟨−1⟩"),
            }
        }
        Self {
            group,
            exponents,
            conductor,
            order,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.group.modulus
    }

    pub fn index(&self) -> u64 {
        self.group.exponents_to_index(&self.exponents)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    pub fn group(&self) -> &Arc<CharacterGroup> {
        &self.group
    }

    /// Exponent vector on the CRT generators.
    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// `χ(n) = e(k / L)` with `L = group.exponent()`; `None` when `gcd(n, q) > 1`.
    pub fn value_index(&self, n: u64) -> Option<u64> {
        let big_l = self.group.exponent;
        let mut acc = 0u64;
        for (c, &e) in self.group.components.iter().zip(&self.exponents) {
            let log = c.logs[(n % c.modulus) as usize];
            if log == NO_LOG {
                return None;
            }
            acc = (acc + (log as u64 * e % c.order) * (big_l / c.order)) % big_l;
        }
        if self.modulus() > 1 && gcd(n % self.modulus(), self.modulus()) != 1 {
            // modulus 2: no components, odd n only
            return None;
        }
        Some(acc)
    }

    pub fn value(&self, n: u64) -> Complex64 {
        match self.value_index(n) {
            None => Complex64::new(0.0, 0.0),
            Some(k) => root_of_unity(k, self.group.exponent),
        }
    }

    /// `χ(n)` as an integer for real characters.
    pub fn value_real(&self, n: u64) -> i8 {
        assert!(self.is_real(), "value_real on a complex character");
        match self.value_index(n) {
            None => 0,
            Some(0) => 1,
            Some(_) => -1,
        }
    }

    /// 0 if `χ(−1) = 1`, 1 if `χ(−1) = −1`.
    pub fn kappa(&self) -> u8 {
        let q = self.modulus();
        if q <= 2 {
            return 0;
        }
        u8::from(self.value_index(q - 1) != Some(0))
    }

    pub fn conj(&self) -> Self {
        let exps = self
            .group
            .components
            .iter()
            .zip(&self.exponents)
            .map(|(c, &e)| (c.order - e) % c.order)
            .collect();
        Self {
            group: self.group.clone(),
            exponents: exps,
            conductor: self.conductor,
            order: self.order,
        }
    }

    /// The primitive character inducing this one, on a fresh group mod the conductor.
    pub fn primitive(&self) -> Self {
        if self.is_primitive() {
            return self.clone();
        }
        let target = CharacterGroup::new(self.conductor);
        let mut exps = Vec::with_capacity(target.components.len());
        for tc in &target.components {
            let (i, c) = self
                .group
                .components
                .iter()
                .enumerate()
                .find(|(_, c)| c.prime == tc.prime && c.kind == tc.kind)
                .expect("conductor component present in the modulus");
            let e = self.exponents[i];
            let shrink = c.order / tc.order;
            debug_assert_eq!(e % shrink, 0);
            exps.push(e / shrink);
        }
        Self::from_exponents(target, exps)
    }

    /// Values `χ(0), …, χ(q−1)` as complex numbers.
    pub fn value_table(&self) -> Vec<Complex64> {
        (0..self.modulus()).map(|n| self.value(n)).collect()
    }
}

/// `e(k / n) = exp(2πik/n)`, exact at the quarter points.
pub fn root_of_unity(k: u64, n: u64) -> Complex64 {
    let k = k % n;
    if 4 * k % n == 0 {
        return match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
    }
    let angle = std::f64::consts::TAU * k as f64 / n as f64;
    Complex64::new(angle.cos(), angle.sin())
}
