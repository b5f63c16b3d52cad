//! Constant addition in the Fourier basis (Draper-style), plus the
//! increment and threshold-comparison circuits built from it.

use crate::circuit::qft::{emit_inverse_qft, emit_qft};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::sim::gate::{Control, Gate};

/// Appends `value += constant (mod 2^w)` over `qubits` (bit 0 = LSB).
///
/// The register is moved into the Fourier basis, each bit picks up the phase
/// `exp(2πi·constant·2^j / 2^w)`, and the register is moved back. Only the
/// phase layer carries `controls`: with any control unsatisfied the QFT and
/// its inverse cancel, so the whole block is the identity.
pub fn emit_add_const(
    c: &mut Circuit,
    qubits: &[usize],
    constant: u64,
    controls: &[Control],
) -> Result<()> {
    let w = qubits.len();
    if w == 0 {
        return Ok(());
    }
    let dim = 1u128 << w;
    let eff_const = constant as u128 % dim;
    if eff_const == 0 {
        return Ok(());
    }
    emit_qft(c, qubits)?;
    for (j, &q) in qubits.iter().enumerate() {
        let eff = (eff_const << j) % dim;
        if eff == 0 {
            continue;
        }
        let angle = 2.0 * std::f64::consts::PI * eff as f64 / dim as f64;
        c.push(Gate::cphase(angle, q, controls.to_vec()))?;
    }
    emit_inverse_qft(c, qubits)
}

/// Appends `value += 1 (mod 2^w)` over `qubits`, gated on `controls`.
pub fn emit_increment(c: &mut Circuit, qubits: &[usize], controls: &[Control]) -> Result<()> {
    emit_add_const(c, qubits, 1, controls)
}

/// Appends a comparator that flips `borrow` exactly when the value register
/// holds `p > threshold`.
///
/// The value register and `borrow` (which must start at `|0⟩`) are treated as
/// one `w+1`-bit register and `2^w - 1 - threshold` is added to it: the carry
/// into the top bit fires iff `p > threshold`. `threshold = -1` is allowed
/// and always fires; `threshold = 2^w - 1` never fires. The value register is
/// left holding the (wrapped) sum — run the inverse afterwards to restore it.
pub fn emit_compare_gt(
    c: &mut Circuit,
    value_qubits: &[usize],
    borrow: usize,
    threshold: i64,
    controls: &[Control],
) -> Result<()> {
    let w = value_qubits.len();
    let max = (1i128 << w) - 1;
    if threshold < -1 || threshold as i128 > max {
        return Err(Error::Contract(format!(
            "comparison threshold {threshold} out of range -1..={max} for a {w}-bit value"
        )));
    }
    let constant = ((1i128 << w) - 1 - threshold as i128) as u64;
    let mut ext: Vec<usize> = value_qubits.to_vec();
    ext.push(borrow);
    emit_add_const(c, &ext, constant, controls)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::layout::RegisterLayout;
    use crate::sim::state::{BackendKind, QuantumState};

    fn run_on_basis(c: &Circuit, n: usize, input: u64) -> QuantumState {
        let mut s = QuantumState::zero(BackendKind::Sparse, n).unwrap();
        for b in 0..n {
            if input >> b & 1 == 1 {
                s.apply(&Gate::x(b)).unwrap();
            }
        }
        c.run(&mut s).unwrap();
        s
    }

    #[test]
    fn addition_is_exhaustively_correct_for_widths_1_through_5() {
        for w in 1..=5usize {
            let dim = 1u64 << w;
            let qubits: Vec<usize> = (0..w).collect();
            for constant in 0..dim {
                let mut c = Circuit::new(w);
                emit_add_const(&mut c, &qubits, constant, &[]).unwrap();
                for x in 0..dim {
                    let s = run_on_basis(&c, w, x);
                    let want = (x + constant) % dim;
                    s.expect_basis(want, 1e-9)
                        .unwrap_or_else(|e| panic!("w={w} {x}+{constant}: {e}"));
                }
            }
        }
    }

    #[test]
    fn controlled_addition_fires_only_when_controls_match() {
        // Layout: value on qubits 0..3, control on qubit 3.
        let qubits = [0, 1, 2];
        let mut c = Circuit::new(4);
        emit_add_const(&mut c, &qubits, 5, &[Control::pos(3)]).unwrap();
        // Control clear: value unchanged.
        run_on_basis(&c, 4, 0b0_110).expect_basis(0b0_110, 1e-9).unwrap();
        // Control set: 6 + 5 = 11 ≡ 3 (mod 8), control bit preserved.
        run_on_basis(&c, 4, 0b1_110).expect_basis(0b1_011, 1e-9).unwrap();

        let mut neg = Circuit::new(4);
        emit_add_const(&mut neg, &qubits, 1, &[Control::neg(3)]).unwrap();
        run_on_basis(&neg, 4, 0b0_000).expect_basis(0b0_001, 1e-9).unwrap();
        run_on_basis(&neg, 4, 0b1_000).expect_basis(0b1_000, 1e-9).unwrap();
    }

    #[test]
    fn increment_wraps_at_register_capacity() {
        let qubits = [0, 1];
        let mut c = Circuit::new(2);
        emit_increment(&mut c, &qubits, &[]).unwrap();
        run_on_basis(&c, 2, 0b11).expect_basis(0b00, 1e-9).unwrap();
        run_on_basis(&c, 2, 0b01).expect_basis(0b10, 1e-9).unwrap();
    }

    #[test]
    fn zero_width_and_zero_constant_are_no_ops() {
        let mut c = Circuit::new(2);
        emit_add_const(&mut c, &[], 3, &[]).unwrap();
        emit_add_const(&mut c, &[0, 1], 0, &[]).unwrap();
        assert_eq!(c.gate_count(), 0);
    }

    #[test]
    fn comparator_is_exhaustive_over_4_bit_values_and_thresholds() {
        let mut layout = RegisterLayout::new();
        let value = layout.push("value", 4).unwrap();
        let borrow = layout.push("borrow", 1).unwrap();
        let value_qubits: Vec<usize> = value.qubits().collect();
        for threshold in -1..=15i64 {
            let mut cmp = Circuit::new(5);
            emit_compare_gt(&mut cmp, &value_qubits, borrow.qubit(0), threshold, &[]).unwrap();
            let mut round_trip = cmp.clone();
            round_trip.append(&cmp.inverse()).unwrap();
            for p in 0..16u64 {
                let s = run_on_basis(&cmp, 5, p);
                let want_borrow = (p as i64 > threshold) as u64;
                let borrow_mass = s.probability_where(|k| borrow.value(k) == want_borrow);
                assert!(
                    borrow_mass > 1.0 - 1e-9,
                    "p={p} threshold={threshold}: borrow mass {borrow_mass}"
                );
                // Compute followed by uncompute restores the input exactly.
                run_on_basis(&round_trip, 5, p).expect_basis(p, 1e-9).unwrap();
            }
        }
    }

    #[test]
    fn comparator_rejects_out_of_range_thresholds() {
        let mut c = Circuit::new(5);
        assert!(emit_compare_gt(&mut c, &[0, 1, 2, 3], 4, -2, &[]).is_err());
        assert!(emit_compare_gt(&mut c, &[0, 1, 2, 3], 4, 16, &[]).is_err());
        assert!(emit_compare_gt(&mut c, &[0, 1, 2, 3], 4, 15, &[]).is_ok());
    }
}
