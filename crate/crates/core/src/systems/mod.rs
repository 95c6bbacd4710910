//! The two-component peakon system in its three working forms, plus the
//! conserved functionals, the mKdV-hierarchy pair and peakon profiles.

mod data;
mod hierarchy;
mod invariants;
mod peakon;
mod rhs;
mod state;

pub use data::{InitialData, Mode};
pub use hierarchy::{mkdv_hierarchy_rhs, mkdv_rhs, HierarchyState};
pub use invariants::{hamiltonian_h1, hamiltonian_h2};
pub use peakon::{peak_location, peakon_profile};
pub use rhs::{
    bracket_terms, conservative_rhs, conservative_velocity, mollified_rhs, reformulated_rhs, rhs,
    BracketTerms,
};
pub use state::{momentum_from_state, Momentum, State};
