use serde::Serialize;

use super::PrimeObserver;
use crate::arith::{FundamentalDiscriminant, KroneckerTable};
use crate::dd::DoubleDouble;
use crate::special::TwistedConstants;

/// Twisted errors `E_i(x; d)` and their mean values at one abscissa.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwistedRow {
    pub d: i64,
    pub x: f64,
    /// `Σ_{p≤x} χ_d(p)`
    pub pi_chi: f64,
    /// `Σ_{p≤x} χ_d(p) log p`
    pub theta_chi: f64,
    pub e1: f64,
    pub e2: f64,
    pub e3: f64,
    pub int_e1: f64,
    pub int_e2: f64,
    pub int_e3: f64,
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
}

impl TwistedRow {
    pub const CSV_HEADER: &'static str = "d,x,pi_chi,theta_chi,E1,E2,E3,int_E1,int_E2,int_E3,f1,f2,f3";
}

/// Streams the prime sums twisted by `χ_d`.
///
/// No analytic main term remains, so `∫ E_1` and `∫ E_2` reduce to
/// `X E_i(X) − θ(X, χ_d)` (resp. `π(X, χ_d)`) plus constants; `∫ E_3` is a
/// sum of rectangles.
pub struct TwistedObserver {
    d: FundamentalDiscriminant,
    chi: KroneckerTable,
    c: TwistedConstants,
    s1: DoubleDouble,
    s2: DoubleDouble,
    log_euler: DoubleDouble,
    theta: DoubleDouble,
    pi: i64,
    pos: f64,
    int_e3: DoubleDouble,
    rows: Vec<TwistedRow>,
}

impl TwistedObserver {
    pub fn new(d: FundamentalDiscriminant, c: TwistedConstants) -> Self {
        Self {
            d,
            chi: KroneckerTable::new(d),
            c,
            s1: DoubleDouble::ZERO,
            s2: DoubleDouble::ZERO,
            log_euler: DoubleDouble::ZERO,
            theta: DoubleDouble::ZERO,
            pi: 0,
            pos: 2.0,
            int_e3: DoubleDouble::ZERO,
            rows: Vec::new(),
        }
    }

    pub fn rows(&self) -> &[TwistedRow] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<TwistedRow> {
        self.rows
    }

    fn product(&self) -> f64 {
        (-self.log_euler.to_f64()).exp()
    }
}

impl PrimeObserver for TwistedObserver {
    fn advance(&mut self, to: f64) {
        if to > self.pos {
            self.int_e3 += (self.product() - self.c.l1) * (to - self.pos);
            self.pos = to;
        }
    }

    fn on_prime(&mut self, p: u64) {
        let v = self.chi.get(p);
        if v == 0 {
            return;
        }
        let v = v as f64;
        let pf = p as f64;
        let r = DoubleDouble::ONE / pf * v;
        self.s1 += r * pf.ln();
        self.s2 += r;
        self.log_euler += (-v / pf).ln_1p();
        self.theta += v * pf.ln();
        self.pi += v as i64;
    }

    fn on_checkpoint(&mut self, x: f64) {
        let c = &self.c;
        let e1 = (self.s1 - c.e1).to_f64();
        let e2 = (self.s2 - c.e2).to_f64();
        let theta = self.theta.to_f64();
        let int_e1 = x * e1 - theta + 2.0 * c.e1;
        let int_e2 = x * e2 - self.pi as f64 + 2.0 * c.e2;
        let int_e3 = self.int_e3.to_f64();
        let sqrt_x = x.sqrt();
        let lx = x.ln();
        self.rows.push(TwistedRow {
            d: self.d.d(),
            x,
            pi_chi: self.pi as f64,
            theta_chi: theta,
            e1,
            e2,
            e3: self.product() - c.l1,
            int_e1,
            int_e2,
            int_e3,
            f1: int_e1 / sqrt_x,
            f2: lx / sqrt_x * int_e2,
            f3: lx / (c.l1 * sqrt_x) * int_e3,
        });
    }
}

#[cfg(test)]
mod tests {
    use super::super::{sweep, SweepOptions};
    use super::*;
    use crate::arith::primes_up_to;
    use crate::special::twisted_constants;

    fn run(d: i64, x_max: u64, cuts: &[f64]) -> (TwistedConstants, Vec<TwistedRow>) {
        let d = FundamentalDiscriminant::new(d).unwrap();
        let c = twisted_constants(d);
        let mut obs = TwistedObserver::new(d, c);
        sweep(x_max, cuts, SweepOptions::default(), &mut [&mut obs]).unwrap();
        (c, obs.into_rows())
    }

    #[test]
    fn small_sums_for_five() {
        let (c, rows) = run(5, 10, &[10.0]);
        let r = rows[0];
        let s2 = -0.5 - 1.0 / 3.0 - 1.0 / 7.0;
        assert!((r.e2 + c.e2 - s2).abs() < 1e-15);
        assert_eq!(r.pi_chi, -3.0);
    }

    #[test]
    fn leibniz_product_converges() {
        let (c, rows) = run(-4, 1_000_000, &[1000.0, 1_000_000.0]);
        assert!((c.l1 - std::f64::consts::FRAC_PI_4).abs() < 1e-14);
        // the error is O(1/√x) after averaging; at single points allow log factors
        assert!(rows[1].e3.abs() < 1e-3, "{:?}", rows[1]);
        assert!(rows[1].e1.abs() < 0.05 && rows[1].e2.abs() < 0.01);
    }

    #[test]
    fn integrals_match_rectangles() {
        let top = 3000u64;
        let d = FundamentalDiscriminant::new(-7).unwrap();
        let (c, rows) = run(-7, top, &[100.5, 3000.0]);
        let primes = primes_up_to(top);
        for r in rows {
            // unit-step Riemann sums are exact because sums change only at integers
            let (mut i1, mut i2, mut i3) = (0.0, 0.0, 0.0);
            let mut a = 2.0f64;
            while a < r.x {
                let b = (a.floor() + 1.0).min(r.x);
                let (mut s1, mut s2, mut prod) = (0.0, 0.0, 1.0);
                for &p in primes.iter().take_while(|&&p| p as f64 <= a) {
                    let v = d.chi(p) as f64;
                    let pf = p as f64;
                    s1 += v * pf.ln() / pf;
                    s2 += v / pf;
                    prod /= 1.0 - v / pf;
                }
                i1 += (s1 - c.e1) * (b - a);
                i2 += (s2 - c.e2) * (b - a);
                i3 += (prod - c.l1) * (b - a);
                a = b;
            }
            assert!((r.int_e1 - i1).abs() < 1e-9 * i1.abs().max(1.0), "{r:?} {i1}");
            assert!((r.int_e2 - i2).abs() < 1e-9 * i2.abs().max(1.0), "{r:?} {i2}");
            assert!((r.int_e3 - i3).abs() < 1e-9 * i3.abs().max(1.0), "{r:?} {i3}");
        }
    }
}
