use serde::Serialize;

use super::PrimeObserver;
use crate::arith::totient;
use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::quad::gl8;
use crate::special::{li, ProgressionConstants};

/// Errors `E_i(x; q, a)`, their mean values and the class counts.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProgressionRow {
    pub q: u64,
    pub a: u64,
    pub x: f64,
    pub pi: u64,
    pub theta: f64,
    pub psi: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub int_e1: f64,
    pub int_e2: f64,
    pub int_e3: f64,
}

impl ProgressionRow {
    pub const CSV_HEADER: &'static str = "q,a,x,pi,theta,psi,E1,E2,E3,int_E1,int_E2,int_E3";
}

#[derive(Clone, Copy, Default)]
struct ClassSums {
    s1: DoubleDouble,
    s2: DoubleDouble,
    log_one_minus: DoubleDouble,
    theta: DoubleDouble,
    psi: DoubleDouble,
    pi: u64,
    int_e3: DoubleDouble,
}

/// Streams the prime sums of every reduced residue class modulo `q`.
///
/// The main terms `log x/φ(q)` and `log log x/φ(q)` integrate in closed form;
/// `(log x)^{−1/φ(q)}` is integrated gap by gap with an 8-point rule, which
/// is exact to rounding on gaps where the integrand is this smooth.
pub struct ProgressionObserver {
    q: u64,
    phi: f64,
    constants: Vec<ProgressionConstants>,
    /// class index of each residue, `usize::MAX` for non-units
    slot: Vec<usize>,
    classes: Vec<ClassSums>,
    pos: f64,
    rows: Vec<ProgressionRow>,
}

impl ProgressionObserver {
    /// `constants` must hold one entry per unit `a` modulo `q`.
    pub fn new(q: u64, constants: Vec<ProgressionConstants>) -> Result<Self> {
        if q < 2 {
            return Err(Error::precondition(format!("progressions need q > 1, got {q}")));
        }
        let phi = totient(q);
        if constants.len() as u64 != phi || constants.iter().any(|c| c.q != q) {
            return Err(Error::precondition(format!(
                "need one constant per unit modulo {q}"
            )));
        }
        let mut slot = vec![usize::MAX; q as usize];
        for (i, c) in constants.iter().enumerate() {
            slot[c.a as usize] = i;
        }
        Ok(Self {
            q,
            phi: phi as f64,
            classes: vec![ClassSums::default(); constants.len()],
            constants,
            slot,
            pos: 2.0,
            rows: Vec::new(),
        })
    }

    pub fn rows(&self) -> &[ProgressionRow] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<ProgressionRow> {
        self.rows
    }

    fn class_of(&self, n: u64) -> Option<usize> {
        let i = self.slot[(n % self.q) as usize];
        (i != usize::MAX).then_some(i)
    }
}

impl PrimeObserver for ProgressionObserver {
    fn advance(&mut self, to: f64) {
        let (a, b) = (self.pos, to);
        if b <= a {
            return;
        }
        self.pos = b;
        let inv_phi = 1.0 / self.phi;
        let main = gl8().integrate(a, b, |x| x.ln().powf(-inv_phi));
        for (cls, c) in self.classes.iter_mut().zip(&self.constants) {
            let product = (-cls.log_one_minus.to_f64()).exp();
            cls.int_e3 += product * main - c.e3 * (b - a);
        }
    }

    fn on_prime(&mut self, p: u64) {
        let Some(i) = self.class_of(p) else { return };
        let pf = p as f64;
        let lp = pf.ln();
        let r = DoubleDouble::ONE / pf;
        let cls = &mut self.classes[i];
        cls.s1 += r * lp;
        cls.s2 += r;
        cls.log_one_minus += (-1.0 / pf).ln_1p();
        cls.theta += lp;
        cls.psi += lp;
        cls.pi += 1;
    }

    fn on_prime_power(&mut self, p: u64, _k: u32, n: u64) {
        if let Some(i) = self.class_of(n) {
            self.classes[i].psi += (p as f64).ln();
        }
    }

    fn on_checkpoint(&mut self, x: f64) {
        let lx = x.ln();
        let llx = lx.ln();
        let ln2 = std::f64::consts::LN_2;
        let li_x = li(x).expect("x >= 2");
        let li_2 = li(2.0).expect("li(2)");
        // ∫_2^X log x dx and ∫_2^X log log x dx
        let int_log = x * lx - x - 2.0 * ln2 + 2.0;
        let int_loglog = x * llx - li_x - 2.0 * ln2.ln() + li_2;
        for (cls, c) in self.classes.iter().zip(&self.constants) {
            let s1 = cls.s1.to_f64();
            let s2 = cls.s2.to_f64();
            let theta = cls.theta.to_f64();
            let e1 = (cls.s1 - lx / self.phi - c.e1).to_f64();
            let e2 = (cls.s2 - llx / self.phi - c.e2).to_f64();
            let e3 = (-cls.log_one_minus.to_f64()).exp() * lx.powf(-1.0 / self.phi) - c.e3;
            self.rows.push(ProgressionRow {
                q: self.q,
                a: c.a,
                x,
                pi: cls.pi,
                theta,
                psi: cls.psi.to_f64(),
                e1,
                e2,
                e3,
                int_e1: x * s1 - theta - int_log / self.phi - c.e1 * (x - 2.0),
                int_e2: x * s2 - cls.pi as f64 - int_loglog / self.phi - c.e2 * (x - 2.0),
                int_e3: cls.int_e3.to_f64(),
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{sweep, CheckpointGrid, SweepOptions};
    use super::*;
    use crate::arith::{c_count, primes_up_to};
    use crate::quad::adaptive;
    use crate::special::progression_constants;

    fn run(q: u64, x_max: u64, cuts: &[f64]) -> Vec<ProgressionRow> {
        let mut obs = ProgressionObserver::new(q, progression_constants(q).unwrap()).unwrap();
        sweep(x_max, cuts, SweepOptions::default(), &mut [&mut obs]).unwrap();
        obs.into_rows()
    }

    #[test]
    fn four_one_at_thirty() {
        let rows = run(4, 30, &[30.0]);
        let r = rows.iter().find(|r| r.a == 1).unwrap();
        assert_eq!(r.pi, 4);
        assert!((r.theta - (5.0f64 * 13.0 * 17.0 * 29.0).ln()).abs() < 1e-13);
    }

    #[test]
    fn classes_partition_theta() {
        let x = 100_000u64;
        let primes = primes_up_to(x);
        let theta: f64 = primes.iter().map(|&p| (p as f64).ln()).sum();
        for q in [3u64, 8, 10, 12, 30] {
            let rows = run(q, x, &[x as f64]);
            let parts: f64 = rows.iter().map(|r| r.theta).sum();
            let ramified: f64 = primes.iter().filter(|&&p| q % p == 0).map(|&p| (p as f64).ln()).sum();
            assert!((parts - (theta - ramified)).abs() < 1e-8, "q = {q}");
        }
    }

    #[test]
    fn prime_square_bias() {
        let x = 10_000_000u64;
        for q in [3u64, 4, 5, 8] {
            let rows = run(q, x, &[x as f64]);
            let phi = totient(q) as f64;
            for r in rows {
                let c = c_count(q, r.a).unwrap() as f64;
                let ratio = (r.psi - r.theta) / (x as f64).sqrt();
                let want = c / phi;
                if want > 0.0 {
                    assert!((ratio / want - 1.0).abs() < 0.05, "q = {q}, a = {}: {ratio} vs {want}", r.a);
                } else {
                    // only cubes and higher powers land here
                    assert!(ratio < 0.1, "q = {q}, a = {}: {ratio}", r.a);
                }
            }
        }
    }

    #[test]
    fn errors_vanish_and_integrals_match_oracle() {
        let q = 5;
        let top = 2000u64;
        let rows = run(q, top, &[2000.0]);
        let primes = primes_up_to(top);
        let consts = progression_constants(q).unwrap();
        for r in &rows {
            let c = consts.iter().find(|c| c.a == r.a).unwrap();
            let mut acc = [0.0f64; 3];
            let mut a = 2.0f64;
            while a < r.x {
                let b = a.floor() + 1.0;
                let (mut s1, mut s2, mut prod) = (0.0, 0.0, 1.0);
                for &p in primes.iter().take_while(|&&p| p as f64 <= a).filter(|&&p| p % q == r.a) {
                    let pf = p as f64;
                    s1 += pf.ln() / pf;
                    s2 += 1.0 / pf;
                    prod *= pf / (pf - 1.0);
                }
                acc[0] += adaptive(|x| s1 - x.ln() / 4.0 - c.e1, a, b, 1e-15, 1e-14).value;
                acc[1] += adaptive(|x| s2 - x.ln().ln() / 4.0 - c.e2, a, b, 1e-15, 1e-14).value;
                acc[2] += adaptive(|x| prod * x.ln().powf(-0.25) - c.e3, a, b, 1e-15, 1e-14).value;
                a = b;
            }
            for (got, want) in [r.int_e1, r.int_e2, r.int_e3].into_iter().zip(acc) {
                assert!((got - want).abs() < 1e-9 * want.abs().max(1.0), "a = {}: {got} vs {want}", r.a);
            }
        }
        // the limits are approached: errors at 10^6 are small
        let grid = CheckpointGrid::Explicit(vec![1e6]).points(1_000_000).unwrap();
        for r in run(q, 1_000_000, &grid) {
            assert!(r.e1.abs() < 5e-3 && r.e2.abs() < 1e-3 && r.e3.abs() < 5e-3, "{r:?}");
        }
    }

    #[test]
    fn rejects_mismatched_constants() {
        let c = progression_constants(5).unwrap();
        assert!(ProgressionObserver::new(7, c).is_err());
        assert!(ProgressionObserver::new(1, vec![]).is_err());
    }
}
