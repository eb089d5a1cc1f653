//! Finite-dimensional Hilbert-space engine.

mod decoherence;
mod history;
pub mod linalg;
mod space;

pub use decoherence::{
    branch_state, candidate_probability, classify_set, complex_amplitude, decoherence_functional,
    hermitian_product_eigenvalues, Classification, Tolerances, Verdict,
};
pub use history::{
    chain_class_operator, full_chain_set, full_chain_set_with_cap, reversed_chain_class_operator, ChainStep, ClassOperator,
    Event, HistorySet, Provenance, DEFAULT_SET_CAP,
};
pub use linalg::{HermitianEigen, Matrix};
pub use space::{heisenberg_projector, make_projector, Hamiltonian, ProjectiveDecomposition, Projector, StateVector};
