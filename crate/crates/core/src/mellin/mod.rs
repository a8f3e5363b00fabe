//! Fuchs-type operators and the algebra of complete Mellin symbols.

pub mod inverse;
pub mod operator;
pub mod symbol;
pub mod weight;

pub use inverse::{invert_complete_symbol, residue_table, residues, InverseSymbol};
pub use operator::{conormal_symbol, to_fuchs_form, ClassicalTerm, EulerOperator, FuchsOperator};
pub use symbol::{adjoint_symbol, mtp, CompleteMellinSymbol, Support};
pub use weight::{
    ellipticity_check, ellipticity_check_with_roots, leading_roots, EllipticityReport,
    WeightContext, DIM_X,
};
