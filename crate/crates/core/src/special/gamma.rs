use num_complex::Complex64;

use super::BERNOULLI_2K;

/// Principal branch of `log Γ(z)` for `Re z > 0`, continuous in `z`.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    assert!(z.re > 0.0, "ln_gamma_complex needs Re z > 0");
    // shift into the Stirling region; Σ log(z+k) keeps the branch continuous
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < 10.0 {
        shift += w.ln();
        w += 1.0;
    }
    let half_ln_2pi = 0.5 * std::f64::consts::TAU.ln();
    let mut s = (w - 0.5) * w.ln() - w + half_ln_2pi;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut pow = inv;
    for (k, b) in BERNOULLI_2K.iter().enumerate().take(10) {
        let k = (k + 1) as f64;
        s += pow * (b / (2.0 * k * (2.0 * k - 1.0)));
        pow *= inv2;
    }
    s - shift
}

/// `log Γ(x)` for real `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    ln_gamma_complex(Complex64::new(x, 0.0)).re
}

/// Digamma `ψ(x) = Γ'(x)/Γ(x)` for real `x > 0`.
pub fn digamma(x: f64) -> f64 {
    assert!(x > 0.0, "digamma needs x > 0");
    let mut acc = 0.0;
    let mut x = x;
    while x < 20.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    let mut pow = inv2;
    let mut s = x.ln() - 0.5 / x;
    for (k, b) in BERNOULLI_2K.iter().enumerate().take(10) {
        let k = (k + 1) as f64;
        s -= b / (2.0 * k) * pow;
        pow *= inv2;
    }
    acc + s
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

    #[test]
    fn digamma_special_values() {
        assert!((digamma(1.0) + EULER_GAMMA).abs() < 1e-15);
        assert!((digamma(0.5) + EULER_GAMMA + 2.0 * LN_2).abs() < 1e-15);
        // recurrence ψ(x+1) = ψ(x) + 1/x
        for x in [0.1, 0.7, 3.3, 25.0] {
            assert!((digamma(x + 1.0) - digamma(x) - 1.0 / x).abs() < 1e-13);
        }
    }

    #[test]
    fn ln_gamma_values() {
        assert!(ln_gamma(1.0).abs() < 1e-14);
        assert!((ln_gamma(0.5) - 0.5 * PI.ln()).abs() < 1e-14);
        assert!((ln_gamma(10.0) - 362_880f64.ln()).abs() < 1e-13);
        // |Γ(1/2 + it)|² = π / cosh(πt)
        let t = 7.0;
        let v = ln_gamma_complex(Complex64::new(0.5, t));
        assert!((2.0 * v.re - (PI / (PI * t).cosh()).ln()).abs() < 1e-12);
    }
}
