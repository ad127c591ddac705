//! Mertens error terms, their mean values, and the bias constants attached to
//! the zeros of the Riemann zeta function and Dirichlet L-functions.

pub mod acceptance;
pub mod arith;
pub mod bias;
pub mod bracket;
pub mod dd;
pub mod error;
pub mod primes;
pub mod special;
pub mod quad;
pub mod zeros;

pub use error::{Error, Result};
