//! Quantum Fourier transform over an arbitrary ordered qubit list.

use crate::circuit::Circuit;
use crate::error::Result;
use crate::sim::gate::{Control, Gate};

/// Appends the QFT over `qubits` (index 0 = least significant bit).
///
/// Acting on a basis state of register value `x`, the emitted circuit
/// produces `2^{-w/2} Σ_y exp(2πi·x·y / 2^w) |y⟩` with `y` read in the same
/// bit order as `x` (the final swap layer restores significance).
pub fn emit_qft(c: &mut Circuit, qubits: &[usize]) -> Result<()> {
    let w = qubits.len();
    for j in (0..w).rev() {
        c.push(Gate::h(qubits[j]))?;
        for k in (0..j).rev() {
            let angle = std::f64::consts::PI / (1u64 << (j - k)) as f64;
            c.push(Gate::cphase(angle, qubits[j], vec![Control::pos(qubits[k])]))?;
        }
    }
    for i in 0..w / 2 {
        c.push(Gate::swap(qubits[i], qubits[w - 1 - i]))?;
    }
    Ok(())
}

/// Appends the inverse QFT over `qubits`.
pub fn emit_inverse_qft(c: &mut Circuit, qubits: &[usize]) -> Result<()> {
    let mut fwd = Circuit::new(c.num_qubits());
    emit_qft(&mut fwd, qubits)?;
    c.append(&fwd.inverse())
}
