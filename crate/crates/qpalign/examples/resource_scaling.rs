//! Qubit and gate footprint as instance size grows.
//!
//! Prints the resource estimate for square instances m = n = 1..12: step
//! qubits grow linearly (2 per consumed character), counter and profit
//! registers logarithmically, and the branch space 4^(m+n) exponentially —
//! which is why only tiny instances are simulable even though the circuit
//! itself stays shallow.
//!
//! Run with: cargo run --example resource_scaling

use qpalign::{CharMode, ProfitParams, ResourceEstimate, Result};

fn main() -> Result<()> {
    let params = ProfitParams::new(1, 1, 2)?;

    println!("  m   n   t  qubits  gates  depth  branches");
    for k in 1..=12 {
        let est = ResourceEstimate::for_lengths(k, k, params, CharMode::Reuse)?;
        println!(
            "{:>3} {:>3} {:>3}  {:>6}  {:>5}  {:>5}  {}",
            est.m,
            est.n,
            est.t,
            est.total_qubits,
            est.gate_count.map_or("-".into(), |g| g.to_string()),
            est.depth.map_or("-".into(), |d| d.to_string()),
            est.branch_count.map_or("4^t".into(), |b| b.to_string()),
        );
    }

    // Per-step character registers trade qubits for a shallower circuit:
    // the lookups need no uncomputation between steps.
    println!();
    println!("char-register allocation for m = n = 3:");
    for mode in [CharMode::Reuse, CharMode::PerStep] {
        let est = ResourceEstimate::for_lengths(3, 3, params, mode)?;
        println!(
            "  {:<8}  qubits {:>3}  gates {:>6}  depth {:>6}",
            est.char_mode,
            est.total_qubits,
            est.gate_count.unwrap(),
            est.depth.unwrap(),
        );
    }

    // The worked-example instance from the command-line interface.
    let est = ResourceEstimate::for_lengths(9, 6, params, CharMode::Reuse)?;
    println!();
    println!(
        "(9, 6): {} edit-graph nodes, profit bound {}, {} qubits total",
        est.node_count, est.max_profit_bound, est.total_qubits
    );
    Ok(())
}
