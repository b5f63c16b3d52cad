//! JSON run report emitted by the `align` subcommand.

use serde::Serialize;

use crate::align::{Alignment, ProfitParams};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Details present only for quantum-search runs.
#[derive(Debug, Clone, Serialize)]
pub struct QuantumRunInfo {
    pub seed: u64,
    pub backend: String,
    pub char_mode: String,
    pub budget_c: f64,
    pub budget: u64,
    pub total_iterations: u64,
    pub rounds: usize,
    pub reached_bound: bool,
    pub total_qubits: usize,
}

/// The `align` subcommand's machine-readable result.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: String,
    pub mode: String,
    pub seq_a: String,
    pub seq_b: String,
    pub params: ProfitParams,
    pub m: usize,
    pub n: usize,
    pub profit: u64,
    pub path: String,
    pub alignment_top: String,
    pub alignment_bottom: String,
    pub max_profit_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quantum: Option<QuantumRunInfo>,
    pub wall_time_ms: u128,
}

impl RunReport {
    pub fn new(
        mode: &str,
        seq_a: &str,
        seq_b: &str,
        params: ProfitParams,
        alignment: &Alignment,
        path: &str,
        max_profit_bound: u64,
    ) -> RunReport {
        RunReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: "align".to_string(),
            mode: mode.to_string(),
            seq_a: seq_a.to_string(),
            seq_b: seq_b.to_string(),
            params,
            m: seq_a.len(),
            n: seq_b.len(),
            profit: alignment.profit,
            path: path.to_string(),
            alignment_top: alignment.top.clone(),
            alignment_bottom: alignment.bottom.clone(),
            max_profit_bound,
            quantum: None,
            wall_time_ms: 0,
        }
    }
}
