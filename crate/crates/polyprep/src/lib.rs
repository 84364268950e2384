//! Logarithmic-depth circuits for preparing quantum states whose amplitudes
//! follow a polynomial, together with a dense statevector simulator used to
//! check every block-encoding identity the construction relies on.

pub mod circuit;
pub mod error;
pub mod hamming;
pub mod linear;
pub mod pipeline;
pub mod poly;
pub mod sim;
pub mod sweep;

pub use error::{Error, Result};
