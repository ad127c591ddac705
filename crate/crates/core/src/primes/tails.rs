use serde::Serialize;

use super::checkpoint::PrimeCheckpoint;
use crate::error::{Error, Result};
use crate::special::li;

/// Truncated integrals of the normalized prime-counting errors, up to `x`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TailIntegrals {
    pub x: f64,
    /// `∫_2^x (θ(u) − u)/u² du`
    pub theta: f64,
    /// `∫_2^x (π(u) − li u)/u² du`
    pub pi: f64,
    /// `∫_1^x (ψ(u) − u)/u² du`
    pub psi: f64,
    /// `∫_2^x (Π(u) − li u)/u² du`
    pub big_pi: f64,
    /// `∫_2^x (θ(u) − u)/(u log² u) du`
    pub theta_log2: f64,
}

impl TailIntegrals {
    pub const CSV_HEADER: &'static str = "x,theta_tail,pi_tail,psi_tail,big_pi_tail,theta_log2";
}

/// All tail integrals from the sums in one checkpoint.
///
/// The prime sums are step functions, so `∫ S(u)/u² du` telescopes into
/// `Σ_{p≤x} w(p)/p − S(x)/x`, and `∫ li(u)/u²` integrates by parts to
/// `−li(u)/u + log log u`.
pub fn tail_integrals(cp: &PrimeCheckpoint) -> Result<TailIntegrals> {
    let x = cp.x;
    if !(x >= 4.0) {
        return Err(Error::precondition(format!("tail integrals need x >= 4, got {x}")));
    }
    let lx = x.ln();
    let li_x = li(x)?;
    let li_2 = li(2.0)?;
    let ln2 = std::f64::consts::LN_2;
    let li_part = li_x / x - li_2 / 2.0 - lx.ln() + ln2.ln();
    let pi = cp.pi_x as f64;
    Ok(TailIntegrals {
        x,
        theta: cp.sum_logp_over_p - cp.theta_x / x - (x / 2.0).ln(),
        pi: cp.sum_recip - pi / x + li_part,
        psi: cp.sum_lambda_over_n - cp.psi_x / x - lx,
        big_pi: cp.sum_lambda_over_n_log_n - cp.big_pi_x / x + li_part,
        theta_log2: theta_log2_integral(cp)?,
    })
}

/// `∫_2^x (θ(u) − u)/(u log² u) du` for `x >= 2`.
pub fn theta_log2_integral(cp: &PrimeCheckpoint) -> Result<f64> {
    let x = cp.x;
    if !(x >= 2.0) {
        return Err(Error::precondition(format!("integral starts at 2, got x = {x}")));
    }
    let ln2 = std::f64::consts::LN_2;
    // π(x) = θ(x)/log x + ∫_2^x θ(u)/(u log²u) du and the same
    // integration by parts for li(x)
    Ok((cp.pi_x as f64 - li(x)?) - (cp.theta_x - x) / x.ln() + li(2.0)? - 2.0 / ln2)
}
