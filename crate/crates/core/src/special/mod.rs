//! Scalar special functions: ζ, Hurwitz ζ, Dirichlet L-functions, li,
//! Γ/digamma, and the Mertens constants.

mod constants;
mod gamma;
mod hurwitz;
mod lfunc;
mod li;
mod zeta;

pub use constants::{
    mertens_constants, prime_power_sums, progression_constants, twisted_constants,
    MertensConstants, PrimePowerSums, ProgressionConstants, TwistedConstants,
};
pub use gamma::{digamma, ln_gamma, ln_gamma_complex};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_with_derivative};
pub use lfunc::{
    dirichlet_l, l_complex, l_real, log_l_at_1, logderiv_l_at_1, CharacterValues, LValuePoint,
};
pub use li::{li, li_diff};
pub use zeta::{
    riemann_siegel_theta, zeta, zeta_complex, zeta_logderiv, zeta_minus_one, zeta_prime,
};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `B_2, B_4, …, B_30`.
pub(crate) const BERNOULLI_2K: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];
