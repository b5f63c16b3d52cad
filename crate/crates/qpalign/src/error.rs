//! Crate-wide error type.

use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// The CLI maps these onto process exit codes: invalid input → 2,
/// instance-size guards → 3, verification failures → 4, everything else → 1.
#[derive(Debug, Error)]
pub enum Error {
    /// A sequence contained a character outside `{A, C, G, T}`.
    #[error("invalid nucleotide {found:?} at position {position} (expected one of A, C, G, T)")]
    InvalidNucleotide { found: char, position: usize },

    /// A transition string contained a character outside `{N, V, H, D}`.
    #[error("invalid transition {found:?} at position {position} (expected one of N, V, H, D)")]
    InvalidTransition { found: char, position: usize },

    /// Profit parameters violated their constraints.
    #[error("invalid profit parameters: {0}")]
    InvalidProfitParams(String),

    /// An operation received arguments that break its contract.
    #[error("contract violation: {0}")]
    Contract(String),

    /// A path failed validity where a valid path was required.
    #[error("invalid path: {0}")]
    InvalidPath(String),

    /// An instance exceeded a size guard (path count, qubit budget, ...).
    #[error("instance too large: {0}")]
    TooLarge(String),

    /// A circuit builder was asked for a register too narrow for its data.
    #[error("register overflow: {0}")]
    RegisterOverflow(String),

    /// A qRAM table does not fit the address register.
    #[error("address width too small: need {needed} bits for {entries} entries, have {width}")]
    AddressWidth {
        needed: usize,
        entries: usize,
        width: usize,
    },

    /// Simulator state construction or gate application failed.
    #[error("simulation error: {0}")]
    Simulation(String),

    /// Measurement projected onto a zero-norm subspace.
    #[error("measurement projected onto a zero-norm subspace")]
    ZeroNormProjection,

    /// The randomized search exhausted its budget without a valid sample.
    #[error("search budget exhausted without finding a valid path")]
    SearchExhausted,

    /// Circuit import found malformed text.
    #[error("circuit parse error: {0}")]
    CircuitParse(String),

    /// FASTA input was malformed.
    #[error("FASTA error: {0}")]
    Fasta(String),

    /// One or more verification checks failed.
    #[error("verification failed: {0}")]
    VerificationFailed(String),

    /// Underlying I/O failure.
    #[error(transparent)]
    Io(#[from] std::io::Error),

    /// JSON serialization failure.
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
