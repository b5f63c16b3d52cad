//! Pairwise DNA sequence alignment on a simulated quantum pipeline.

pub mod align;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod fasta;
pub mod grover;
pub mod oracle;
pub mod report;
pub mod sim;
pub mod verify;

pub use align::{
    decode_alignment, encode_base, max_profit_bound, path_profit, path_track, step_profit,
    transition_bounds, Alignment, Base, GridModel, PathTrack, ProfitParams, Sequence, Transition,
    TransitionString,
};
pub use circuit::{AlignmentPipeline, CharMode, CircuitFormat, ResourceEstimate};
pub use error::{Error, Result};
pub use grover::{find_max, grover_success_probability, SearchConfig, SearchResult, SearchTrace};
pub use oracle::{brute_force_max, count_paths, dp_max, edit_distance, OracleResult};
pub use sim::{BackendKind, Gate, Prng, QuantumState, Register, RegisterLayout};
