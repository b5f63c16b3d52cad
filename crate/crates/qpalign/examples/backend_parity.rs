//! Dense and sparse statevector backends agree to machine precision.
//!
//! The dense backend stores all 2^n amplitudes; the sparse backend stores
//! only nonzero ones, which is what makes 50+ qubit scoring circuits
//! tractable on basis states. Both must implement identical semantics. This
//! example runs the full scoring circuit for (AC, GT) on both and reports
//! the worst amplitude deviation, then shows the sparse backend's support
//! staying tiny while the dense vector is already 2^22 entries.
//!
//! Run with: cargo run --example backend_parity

use qpalign::sim::max_amplitude_delta;
use qpalign::{
    AlignmentPipeline, BackendKind, CharMode, ProfitParams, QuantumState, Result, Sequence,
};

fn main() -> Result<()> {
    let s1: Sequence = "AC".parse()?;
    let s2: Sequence = "GT".parse()?;
    let params = ProfitParams::new(1, 1, 2)?;
    let pipeline = AlignmentPipeline::new(s1, s2, params, CharMode::Reuse, false)?;
    let circuit = pipeline.full_circuit()?;

    println!("qubits       {}", pipeline.total_qubits());
    println!("gates        {}", circuit.gate_count());

    let mut dense = QuantumState::zero(BackendKind::Dense, pipeline.total_qubits())?;
    let mut sparse = QuantumState::zero(BackendKind::Sparse, pipeline.total_qubits())?;
    dense.run_gates(circuit.gates())?;
    sparse.run_gates(circuit.gates())?;

    let delta = max_amplitude_delta(&dense, &sparse);
    println!("worst |Δamp| {delta:.3e}");
    assert!(delta < 1e-10);

    // The circuit is a permutation-with-phases of branch states, so the
    // superposition over 4^t step branches stays exactly 4^t states wide.
    // The dense vector keeps floating-point dust from the Fourier-basis
    // adders, so count support above a dust threshold on both sides.
    let support = |s: &QuantumState| {
        s.nonzero()
            .iter()
            .filter(|(_, a)| a.norm_sqr() > 1e-20)
            .count()
    };
    let dense_support = support(&dense);
    let sparse_support = support(&sparse);
    println!("dense  nonzero amplitudes {dense_support}");
    println!("sparse nonzero amplitudes {sparse_support}");
    assert_eq!(dense_support, sparse_support);
    assert_eq!(sparse_support, 1 << pipeline.step_register().width);

    // On a single basis state the sparse backend shines: the chain circuit
    // touches one branch, so support stays O(2^max_register_width) while a
    // dense vector of the same width would hold 2^22 amplitudes.
    let mut basis = QuantumState::zero(BackendKind::Sparse, pipeline.total_qubits())?;
    basis.run_gates(pipeline.chain_circuit()?.gates())?;
    println!("sparse support after scoring one branch: {}", support(&basis));
    assert_eq!(support(&basis), 1);
    Ok(())
}
