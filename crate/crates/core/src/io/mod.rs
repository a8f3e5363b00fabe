//! Operator expressions and JSON forms.

pub mod dsl;
pub mod json;

pub use dsl::{parse_operator, unparse, Expr, OperatorExpression};
pub use json::{OperatorJson, RationalJson, SCHEMA};
