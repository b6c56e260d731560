//! Exact scalars and dense rational linear algebra.
//!
//! Nothing in this crate uses floating point outside of display helpers.

mod complex;
pub mod matrix;
mod rational;

pub use complex::ComplexRational;
pub use matrix::{Matrix, Signature};
pub use rational::{q, qf, Rational};
