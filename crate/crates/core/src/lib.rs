//! Exact Mellin-symbol calculus for Fuchs-type ordinary differential
//! operators with matrix coefficients on the half-line.
//!
//! Everything is computed over the Gaussian rationals, so every identity the
//! engine checks is checked with zero tolerance.

pub mod algebra;
pub mod asymptotic;
pub mod error;
pub mod green;
pub mod io;
pub mod local;
pub mod mellin;
pub mod suites;

pub use error::{Error, Result};
