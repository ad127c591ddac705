use crate::error::{Error, Result};
use crate::quad;

use super::EULER_GAMMA;

/// Logarithmic integral `li(x) = ∫_0^x dt / log t` (principal value for `x > 1`).
pub fn li(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::precondition(format!("li({x}): x must be >= 0")));
    }
    if x == 1.0 {
        return Err(Error::precondition("li(1) is a pole"));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let l = x.ln();
    if x > 1.0 {
        Ok(li_series(l))
    } else {
        Ok(-e1(-l))
    }
}

/// `li(x) = γ + log l + Σ_{n≥1} lⁿ/(n · n!)` with `l = log x > 0`; every
/// term is positive, so there is no cancellation.
fn li_series(l: f64) -> f64 {
    let mut term = 1.0; // lⁿ/n!
    let mut sum = 0.0;
    for n in 1..2000 {
        let nf = n as f64;
        term *= l / nf;
        let add = term / nf;
        sum += add;
        if add < 1e-17 * sum && nf > l {
            break;
        }
    }
    EULER_GAMMA + l.ln() + sum
}

/// Exponential integral `E_1(z)` for `z > 0`.
fn e1(z: f64) -> f64 {
    if z <= 1.0 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for k in 1..60 {
            term *= -z / k as f64;
            sum += term / k as f64;
        }
        -EULER_GAMMA - z.ln() - sum
    } else {
        // modified Lentz on the continued fraction
        let tiny = 1e-300;
        let mut b = z + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let a = -((i * i) as f64);
            b += 2.0;
            d = 1.0 / (a * d + b);
            c = b + a / c;
            let del = c * d;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        h * (-z).exp()
    }
}

/// `li(b) − li(a)` for `1 < a <= b`, accurate also when `b − a` is tiny.
pub fn li_diff(a: f64, b: f64) -> f64 {
    debug_assert!(a > 1.0 && b >= a);
    if b == a {
        return 0.0;
    }
    if b <= 2.0 * a {
        quad::gl20().integrate(a, b, |t| 1.0 / t.ln())
    } else {
        li_series(b.ln()) - li_series(a.ln())
    }
}
