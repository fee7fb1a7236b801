//! Hurwitz-Lerch zeta and double zeta functions, and the probability
//! distributions on the real line and the plane that they generate.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod dist;
pub mod error;
pub mod numerics;
pub mod verify;
pub mod zeta;

pub use error::{Axis, Error, Rejection, Result};
pub use numerics::{ComplexValue, QuadratureConfig, QuadratureResult};
