//! Exact evaluation and empirical verification toolkit for cubic exponential
//! sums: closed-form quadratic Gauss sums with a brute-force oracle, smooth
//! and sharp Weyl sums, Weyl-differencing and lattice-reduction machinery,
//! and deterministic sweep/trace harnesses.

pub mod error;
pub mod expsum;
pub mod gauss;
pub mod harness;
pub mod modarith;
pub mod reduction;
pub mod verify;

pub use error::{Error, Result};
