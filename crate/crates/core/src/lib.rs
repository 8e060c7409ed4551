//! Exchangeable pairs from reversible Markov chains, and how the chain's step
//! size moves the Stein error bounds for normal and Poisson approximation.
//!
//! The numeric core is exact: every transition probability, Krawtchouk value,
//! character ratio and conditional moment is a [`Rational`]. Only the final
//! square and fourth roots of a bound are taken in `f64`.
//!
//! See the `examples/` directory for one runnable program per capability.

pub mod bound;
pub mod cli;
pub mod error;
pub mod exactmath;
pub mod hamming;
pub mod kernel;
pub mod krawtchouk;
pub mod oracle;
pub mod poisson;
pub mod sn_plancherel;
pub mod spectrum;

pub use error::{Error, Result};
pub use exactmath::Rational;
