//! Exact verification tools for lower bounds on `P(|sum eps_i a_i| <= 1)`
//! where the `eps_i` are independent uniform signs and `a` is a unit vector.
//!
//! Everything on the certificate path is exact rational arithmetic; the
//! only floating-point quantity is the normal tail, which is consumed as a
//! one-sided upper bound.

pub mod constants;
pub mod error;
pub mod lp;
pub mod mirror;
pub mod partition;
pub mod prover;
pub mod rademacher;
pub mod rational;
pub mod report;
pub mod sampling;
pub mod tail;

pub use error::{Error, Result};
pub use rademacher::{SumDistribution, WeightVector};
pub use rational::Rational;
