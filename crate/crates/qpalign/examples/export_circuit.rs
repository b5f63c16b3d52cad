//! Exporting circuits to portable text and JSON, and importing them back.
//!
//! Serializes the full scoring circuit for (A, C) in both formats, re-parses
//! each, and checks the round trip is exact. The text format is line-based
//! (one gate per line, explicit control polarities) so diffs stay readable;
//! the JSON format carries the same content for programmatic consumers.
//!
//! Run with: cargo run --example export_circuit

use qpalign::circuit::{export_circuit, import_circuit};
use qpalign::{AlignmentPipeline, CharMode, CircuitFormat, ProfitParams, Result, Sequence};

fn main() -> Result<()> {
    let s1: Sequence = "A".parse()?;
    let s2: Sequence = "C".parse()?;
    let params = ProfitParams::new(1, 1, 2)?;
    let pipeline = AlignmentPipeline::new(s1, s2, params, CharMode::Reuse, false)?;
    let circuit = pipeline.full_circuit()?;

    // --- portable text ---------------------------------------------------
    let text = export_circuit(pipeline.layout(), &circuit, CircuitFormat::PortableQasm)?;
    println!("portable text, first 14 lines:");
    for line in text.lines().take(14) {
        println!("  {line}");
    }
    println!("  ... ({} lines total)", text.lines().count());

    let (layout2, circuit2) = import_circuit(&text, CircuitFormat::PortableQasm)?;
    let text2 = export_circuit(&layout2, &circuit2, CircuitFormat::PortableQasm)?;
    assert_eq!(text, text2, "text round trip must be byte-identical");
    println!("text round trip: byte-identical");

    // --- JSON --------------------------------------------------------------
    let json = export_circuit(pipeline.layout(), &circuit, CircuitFormat::Json)?;
    let (layout3, circuit3) = import_circuit(&json, CircuitFormat::Json)?;
    let json2 = export_circuit(&layout3, &circuit3, CircuitFormat::Json)?;
    assert_eq!(json, json2, "json round trip must be byte-identical");
    println!("json round trip: byte-identical ({} bytes)", json.len());

    // The re-imported circuit is structurally the original.
    assert_eq!(circuit.gate_count(), circuit2.gate_count());
    assert_eq!(circuit.gate_count(), circuit3.gate_count());
    assert_eq!(pipeline.layout().total_qubits(), layout2.total_qubits());
    println!(
        "{} gates on {} qubits survived both trips",
        circuit.gate_count(),
        layout2.total_qubits()
    );
    Ok(())
}
