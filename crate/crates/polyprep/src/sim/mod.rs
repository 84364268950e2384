//! Dense statevector engine and the block-extraction tooling built on it.

pub mod basis;
mod block;
mod matrix;
mod state;

pub use basis::BasisState;
pub use block::{
    extract_block, extract_block_fast, extract_column_fixed_system, extract_columns,
    extract_diagonal, system_diagonal_form, SpueDescriptor,
};
pub use matrix::{matrix_chebyshev_oracle, unitary_of};
pub use state::{apply, distance_up_to_phase, fidelity, inner, StateVector, SIM_CAP};
