//! Hidden quantum correlations in reductions of classically correlated
//! bipartite states.
//!
//! A state diagonal in a product basis carries no quantum correlations, yet
//! tracing out part of one party can leave a reduced state whose
//! measurement-induced disturbance (MID) is nonzero. This crate builds such
//! states, reduces them, and evaluates MID, the symmetric discord, and the
//! inequality chain that bounds them.

pub mod cli;
pub mod correlations;
pub mod error;
pub mod families;
pub mod optimize;
pub mod state_file;
pub mod states;
pub mod tensor;

pub use correlations::{
    check_bounds, commutation_classicality, dephase, mid, mutual_information, symmetric_discord, BoundCheck,
    CorrelationReport, DiscordOptions, MeasurementPair,
};
pub use error::{Error, Result};
pub use states::{
    build_classical_state, reduce, shannon_entropy, von_neumann_entropy, ClassicalStateSpec, DensityMatrix,
    SubsystemLayout,
};
pub use tensor::{hermitian_eig, partial_trace, tensor_product, ComplexMatrix, Spectrum, Tolerances};
