//! Strip-level asymptotic types: special vectors, the spaces `L_S^δ`,
//! characteristic bases compatible with the conormal filtration, conjugate
//! bases and the generalized Keldysh relations.

pub mod conjugate;
pub mod special;
pub mod strip;

pub use conjugate::{
    conjugate_complete_basis, fundamental_check, generalized_keldysh_check, ConjugateBasis,
    FundamentalEntry, GeneralizedKeldyshReport, KeldyshEntry,
};
pub use special::SpecialVector;
pub use strip::{
    properness_check, strip_basis, strip_basis_with_roots, theta, theta_at, StripBasis, ThetaValue,
};
