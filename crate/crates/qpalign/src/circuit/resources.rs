//! Resource estimation for the scoring pipeline at given sequence lengths.

use serde::Serialize;

use crate::align::{max_profit_bound, transition_bounds, Base, GridModel, ProfitParams, Sequence};
use crate::circuit::profit::{width_for_max, AlignmentPipeline, CharMode};
use crate::error::{Error, Result};

/// Gate statistics are only synthesized while the whole layout fits the
/// simulator's 63-qubit index space; past that the estimate reports widths
/// and counts but no per-gate breakdown.
pub const GATE_STATS_MAX_QUBITS: usize = 63;

/// Qubit and gate footprint of the scoring pipeline for an `(m, n)` instance.
///
/// Everything except `gate_count`/`depth` follows from the lengths alone.
/// Gate statistics depend on sequence content (a lookup entry emits one NOT
/// per set code bit), so they are synthesized for all-`T` sequences — the
/// densest case — and omitted for instances past [`GATE_STATS_MAX_QUBITS`].
#[derive(Debug, Clone, Serialize)]
pub struct ResourceEstimate {
    pub m: usize,
    pub n: usize,
    /// Transition string length `m + n`.
    pub t: usize,
    /// Grid nodes `(m+1)(n+1)`.
    pub node_count: u64,
    /// Number of length-`t` transition strings, `4^t`, when it fits `u64`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch_count: Option<u64>,
    pub max_profit_bound: u64,
    pub step_qubits: usize,
    pub counter_width: usize,
    pub profit_width: usize,
    pub char_qubits: usize,
    pub hit_qubits: usize,
    pub validity_qubits: usize,
    pub search_qubits: usize,
    pub total_qubits: usize,
    pub char_mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gate_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
}

impl ResourceEstimate {
    /// Estimates the footprint for sequences of lengths `m` and `n`,
    /// including the two search ancillas.
    pub fn for_lengths(
        m: usize,
        n: usize,
        params: ProfitParams,
        char_mode: CharMode,
    ) -> Result<ResourceEstimate> {
        let (_, t) = transition_bounds(m, n);
        let node_count = u64::try_from(GridModel::new(m, n).node_count()).map_err(|_| {
            Error::TooLarge(format!("grid of {m} x {n} has more nodes than fit in u64"))
        })?;
        let counter_width = width_for_max(t as u64);
        let profit_width = width_for_max(max_profit_bound(m, n, params));
        let (char_qubits, hit_qubits) = match char_mode {
            CharMode::Reuse => (4, 2),
            CharMode::PerStep => (4 * t, 2 * t),
        };
        let search_qubits = 2;
        let total_qubits = 2 * t
            + 2 * counter_width
            + profit_width
            + char_qubits
            + hit_qubits
            + 1
            + search_qubits;

        let (mut gate_count, mut depth) = (None, None);
        if total_qubits <= GATE_STATS_MAX_QUBITS {
            let dense_seq = |len: usize| Sequence::new(vec![Base::T; len]);
            let pipeline = AlignmentPipeline::new(
                dense_seq(m),
                dense_seq(n),
                params,
                char_mode,
                true,
            )?;
            let full = pipeline.full_circuit()?;
            gate_count = Some(full.gate_count());
            depth = Some(full.depth());
        }

        Ok(ResourceEstimate {
            m,
            n,
            t,
            node_count,
            branch_count: (t <= 31).then(|| 1u64 << (2 * t)),
            max_profit_bound: max_profit_bound(m, n, params),
            step_qubits: 2 * t,
            counter_width,
            profit_width,
            char_qubits,
            hit_qubits,
            validity_qubits: 1,
            search_qubits,
            total_qubits,
            char_mode: char_mode.name().to_string(),
            gate_count,
            depth,
        })
    }
}
