//! Local asymptotic types: Jordan chains of a holomorphic matrix function
//! at one point, the conjugate basis, Keldysh's formula and the local
//! residue pairing.

pub mod chain;
pub mod jordan;
pub mod types;

pub use chain::ChainVector;
pub use types::{
    conjugate_local_basis, det_multiplicity, inverse_principal, jordan_chains, keldysh_check,
    local_pairing, local_pairing_matrix, orbit, orbit_labels, tensor_principal, KeldyshReport,
    LocalType,
};
