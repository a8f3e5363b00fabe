//! Boundary form on the domain quotient and Green's formula.

pub mod pairing;
pub mod render;
pub mod report;

pub use pairing::{
    boundary_pairing, conjugate_jordan_basis, domain_quotient, domain_quotient_for_symbol,
    domain_quotient_with_roots, pairing_matrix, DomainQuotient,
};
pub use render::{green_formula, Coefficient, GreenFormula, GreenTerm};
pub use report::{
    render_green_formula, verify_quotient, verify_theorem_main, verify_theorem_main_with_roots,
    GreenChecks, GreenReport, RenderedGreen,
};
