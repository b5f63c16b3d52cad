//! Table lookup of sequence characters under address control.
//!
//! The scoring circuit reads "the h-th character of s1" without collapsing
//! the superposition over h: for every 1-based address, a multi-controlled
//! block writes that character's 2-bit code into the data register and flips
//! a hit qubit. The hit qubit distinguishes a real 'A' (code 00, hit 1) from
//! an out-of-range address (data 00, hit 0).
//!
//! Run with: cargo run --example qram_lookup

use qpalign::circuit::{emit_table_lookup, Circuit};
use qpalign::{BackendKind, Gate, QuantumState, RegisterLayout, Result, Sequence};

fn main() -> Result<()> {
    let table: Sequence = "ATG".parse()?;

    let mut layout = RegisterLayout::new();
    let addr = layout.push("addr", 2)?;
    let data = layout.push("data", 2)?;
    let hit = layout.push("hit", 1)?;

    let mut lookup = Circuit::new(layout.total_qubits());
    emit_table_lookup(&mut lookup, &table, addr, data, Some(hit.offset), &[])?;

    println!("table {table}  (A=00 C=01 G=10 T=11, addresses are 1-based)");
    println!();
    println!("addr  data  hit  meaning");
    for a in 0..4u64 {
        let mut state = QuantumState::zero(BackendKind::Dense, layout.total_qubits())?;
        let mut prep = Circuit::new(layout.total_qubits());
        for q in addr.qubits() {
            if (a >> (q - addr.offset)) & 1 == 1 {
                prep.push(Gate::x(q))?;
            }
        }
        state.run_gates(prep.gates())?;
        state.run_gates(lookup.gates())?;
        let idx = state.nonzero()[0].0;
        let d = data.value(idx);
        let h = hit.value(idx);
        let meaning = if h == 1 {
            format!("read '{}'", table.get(a as usize - 1).unwrap().to_char())
        } else {
            "address outside the table".to_string()
        };
        println!("{a:>4}  {:>4}  {h:>3}  {meaning}", format!("{d:02b}"));
        if (1..=table.len() as u64).contains(&a) {
            assert_eq!(d, table.get(a as usize - 1).unwrap().code() as u64);
            assert_eq!(h, 1);
        } else {
            assert_eq!(d, 0);
            assert_eq!(h, 0);
        }
    }

    // The same circuit acts linearly on a superposition of addresses: data
    // and hit become entangled with addr instead of taking a single value.
    let mut state = QuantumState::zero(BackendKind::Dense, layout.total_qubits())?;
    let mut sup = Circuit::new(layout.total_qubits());
    for q in addr.qubits() {
        sup.push(Gate::h(q))?;
    }
    state.run_gates(sup.gates())?;
    state.run_gates(lookup.gates())?;
    println!();
    println!("uniform over addresses, after lookup:");
    for (idx, amp) in state.nonzero() {
        println!(
            "  addr {} data {:02b} hit {}  amplitude {:.3}",
            addr.value(idx),
            data.value(idx),
            hit.value(idx),
            amp.re
        );
    }
    Ok(())
}
