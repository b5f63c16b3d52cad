//! Circuit construction: a validated gate list plus builders for the
//! arithmetic, lookup, and alignment-scoring subcircuits.

pub mod adder;
pub mod export;
pub mod profit;
pub mod qft;
pub mod qram;
pub mod resources;

use crate::error::Result;
use crate::sim::gate::Gate;
use crate::sim::state::QuantumState;

pub use adder::{emit_add_const, emit_compare_gt, emit_increment};
pub use export::{export_circuit, import_circuit, CircuitFormat};
pub use profit::{width_for_max, AlignmentPipeline, CharMode};
pub use qft::{emit_inverse_qft, emit_qft};
pub use qram::emit_table_lookup;
pub use resources::ResourceEstimate;

/// An ordered list of gates over a fixed number of qubits. Every push is
/// validated against the qubit count, so a stored circuit is always runnable.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Circuit {
        Circuit {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// Appends every gate of `other` (which must be over the same qubit
    /// count).
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        self.extend(other.gates.iter().cloned())
    }

    /// The adjoint circuit: gates reversed, each inverted.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Circuit depth: the longest chain of gates that touch a common qubit.
    /// Controls count as touching.
    pub fn depth(&self) -> usize {
        let mut level = vec![0usize; self.num_qubits];
        let mut depth = 0;
        for g in &self.gates {
            let qubits = g
                .targets
                .iter()
                .copied()
                .chain(g.controls.iter().map(|c| c.qubit));
            let this = qubits.clone().map(|q| level[q]).max().unwrap_or(0) + 1;
            for q in qubits {
                level[q] = this;
            }
            depth = depth.max(this);
        }
        depth
    }

    /// Runs the whole gate list on `state`.
    pub fn run(&self, state: &mut QuantumState) -> Result<()> {
        state.run_gates(self.gates.iter())
    }
}
