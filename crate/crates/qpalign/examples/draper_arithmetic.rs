//! Quantum arithmetic in the Fourier basis: Draper adders and comparators.
//!
//! The pipeline's counters and profit accumulator never use ripple-carry
//! logic; every "+= constant" is a QFT, one phase rotation per qubit, and an
//! inverse QFT. This example drives those primitives directly on basis
//! states: a plain addition, a controlled addition, and a strict
//! greater-than comparison via a borrow qubit.
//!
//! Run with: cargo run --example draper_arithmetic

use qpalign::circuit::{emit_add_const, emit_compare_gt, width_for_max, Circuit};
use qpalign::sim::Control;
use qpalign::{BackendKind, QuantumState, RegisterLayout, Result};

/// Basis index carrying the dominant amplitude (the arithmetic result; the
/// rest is floating-point dust from the Fourier-basis rotations).
fn dominant(state: &QuantumState) -> u64 {
    state
        .nonzero()
        .into_iter()
        .max_by(|a, b| a.1.norm_sqr().total_cmp(&b.1.norm_sqr()))
        .expect("state has at least one amplitude")
        .0
}

fn main() -> Result<()> {
    // --- constant addition mod 2^4 -------------------------------------
    let mut layout = RegisterLayout::new();
    let value = layout.push("value", 4)?;

    let mut circuit = Circuit::new(layout.total_qubits());
    emit_add_const(&mut circuit, &value.qubits().collect::<Vec<_>>(), 5, &[])?;

    // Start the register at 9: |9> + 5 = |14 mod 16>.
    let mut state = QuantumState::zero(BackendKind::Dense, layout.total_qubits())?;
    let mut prep = Circuit::new(layout.total_qubits());
    for q in value.qubits() {
        if (9 >> (q - value.offset)) & 1 == 1 {
            prep.push(qpalign::Gate::x(q))?;
        }
    }
    state.run_gates(prep.gates())?;
    state.run_gates(circuit.gates())?;
    let idx = dominant(&state);
    println!("9 + 5 mod 16      = {}", value.value(idx));
    assert_eq!(value.value(idx), 14);

    // --- controlled addition --------------------------------------------
    let mut layout = RegisterLayout::new();
    let value = layout.push("value", 3)?;
    let flag = layout.push("flag", 1)?;

    let mut add = Circuit::new(layout.total_qubits());
    emit_add_const(&mut add, &value.qubits().collect::<Vec<_>>(), 3, &[Control::pos(flag.offset)])?;

    // Control is |0>: nothing happens. The QFT and inverse QFT are emitted
    // without controls; they cancel exactly when the phase rotations in
    // between do not fire.
    let mut state = QuantumState::zero(BackendKind::Dense, layout.total_qubits())?;
    state.run_gates(add.gates())?;
    let idx = dominant(&state);
    println!("0 + 3 (ctrl off)  = {}", value.value(idx));
    assert_eq!(value.value(idx), 0);

    // Control is |1>: the addition applies.
    let mut state = QuantumState::zero(BackendKind::Dense, layout.total_qubits())?;
    let mut set_flag = Circuit::new(layout.total_qubits());
    set_flag.push(qpalign::Gate::x(flag.offset))?;
    state.run_gates(set_flag.gates())?;
    state.run_gates(add.gates())?;
    let idx = dominant(&state);
    println!("0 + 3 (ctrl on)   = {}", value.value(idx));
    assert_eq!(value.value(idx), 3);

    // --- strict comparison p > v ------------------------------------------
    // Adding 2^w - 1 - v to the (w+1)-bit extension of p overflows into the
    // borrow qubit exactly when p > v.
    let mut layout = RegisterLayout::new();
    let p = layout.push("p", 3)?;
    let borrow = layout.push("borrow", 1)?;
    let threshold = 4i64;

    let mut cmp = Circuit::new(layout.total_qubits());
    emit_compare_gt(&mut cmp, &p.qubits().collect::<Vec<_>>(), borrow.offset, threshold, &[])?;
    let uncmp = cmp.inverse();

    println!();
    println!("p  p > {threshold}");
    for v in 0..8u64 {
        let mut state = QuantumState::zero(BackendKind::Dense, layout.total_qubits())?;
        let mut prep = Circuit::new(layout.total_qubits());
        for q in p.qubits() {
            if (v >> (q - p.offset)) & 1 == 1 {
                prep.push(qpalign::Gate::x(q))?;
            }
        }
        state.run_gates(prep.gates())?;
        state.run_gates(cmp.gates())?;
        let gt = borrow.value(dominant(&state)) == 1;
        println!("{v}  {gt}");
        assert_eq!(gt, v as i64 > threshold);

        // The comparison shifts the extended register, so the search oracle
        // copies the borrow onto a flag qubit and then runs the comparator
        // in reverse. After the uncompute, p and borrow are back intact.
        state.run_gates(uncmp.gates())?;
        let idx = dominant(&state);
        assert_eq!(p.value(idx), v);
        assert_eq!(borrow.value(idx), 0);
    }

    println!();
    println!(
        "width_for_max(21) = {} qubits hold any profit up to 21",
        width_for_max(21)
    );
    Ok(())
}
