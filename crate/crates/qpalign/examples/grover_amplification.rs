//! Grover amplification measured against the closed-form success curve.
//!
//! Builds the phase oracle "profit > threshold AND path valid" for the pair
//! (A, "") and applies Grover rounds to the uniform superposition over all
//! 4^t branches. After r rounds the probability of measuring a marked branch
//! should equal sin^2((2r+1) * asin(sqrt(k/N))); this example prints both
//! numbers side by side.
//!
//! With one marked branch among N=4, a single round amplifies the success
//! probability to exactly 1.
//!
//! Run with: cargo run --example grover_amplification

use qpalign::grover::{build_diffusion, build_phase_oracle, grover_success_probability};
use qpalign::{
    AlignmentPipeline, BackendKind, CharMode, ProfitParams, QuantumState, Result, Sequence,
};

fn main() -> Result<()> {
    let s1: Sequence = "A".parse()?;
    let s2: Sequence = "".parse()?;
    let params = ProfitParams::new(1, 1, 2)?;
    let pipeline = AlignmentPipeline::new(s1, s2, params, CharMode::Reuse, true)?;

    // t = 1 step, so the step register ranges over N = 4 branches:
    // 00 none, 01 vertical, 10 horizontal, 11 diagonal. Only "horizontal"
    // consumes the single character of s1, so with threshold 0 exactly one
    // branch is marked (k = 1).
    let threshold = 0;
    let oracle = build_phase_oracle(&pipeline, threshold)?;
    let diffusion = build_diffusion(&pipeline)?;
    let step = pipeline.step_register();
    let n_branches = 1u64 << step.width;
    let marked = 1u64; // the single valid branch with profit > 0

    println!("branches N      {n_branches}");
    println!("marked k        {marked}");
    println!("oracle gates    {}", oracle.gate_count());
    println!("diffusion gates {}", diffusion.gate_count());
    println!();
    println!("rounds  measured_p  closed_form");

    let prepare = pipeline.prepare_circuit()?;
    for rounds in 0..=4u64 {
        let mut state = QuantumState::zero(BackendKind::Sparse, pipeline.total_qubits())?;
        state.run_gates(prepare.gates())?;
        for _ in 0..rounds {
            state.run_gates(oracle.gates())?;
            state.run_gates(diffusion.gates())?;
        }
        // Probability that the step register reads the marked branch
        // (horizontal = code 0b10).
        let p = state.probability_where(|idx| step.value(idx) == 0b10);
        let predicted = grover_success_probability(marked, n_branches, rounds);
        println!("{rounds:>6}  {p:>10.6}  {predicted:>11.6}");
        assert!((p - predicted).abs() < 1e-9);
    }

    println!();
    println!("one round suffices: k=1, N=4 gives sin^2(3 * asin(1/2)) = 1");
    Ok(())
}
