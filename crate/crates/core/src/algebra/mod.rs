//! Exact arithmetic substrate over the Gaussian rationals.

pub mod laurent;
pub mod matpoly;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod scalar;

pub use laurent::{laurent_expand, LaurentExpansion};
pub use matpoly::MatrixPolynomial;
pub use matrix::{Matrix, Solution, Vector};
pub use poly::Poly;
pub use rational::{matrix_inverse_rational, rational_inverse, RationalMatrixFunction};
pub use roots::{rational_roots, roots_with_hints, RootSet};
pub use scalar::Gq;
