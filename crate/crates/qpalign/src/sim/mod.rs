//! Statevector simulation: gates, register layouts, dense and sparse
//! backends, and seeded measurement.

pub mod dense;
pub mod gate;
pub mod layout;
pub mod rng;
pub mod sparse;
pub mod state;

pub use dense::{DenseState, DENSE_MAX_QUBITS};
pub use gate::{Control, Gate, GateKind};
pub use layout::{bitstring, Register, RegisterLayout};
pub use rng::Prng;
pub use sparse::{SparseState, SPARSE_MAX_QUBITS, SPARSE_PRUNE_THRESHOLD};
pub use state::{max_amplitude_delta, BackendKind, QuantumState};
