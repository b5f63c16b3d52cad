//! Maximum-profit search: a phase oracle over the scoring pipeline, the
//! inversion-about-the-mean operator, and an adaptive-threshold driver in
//! the Boyer–Brassard–Høyer–Tapp / Dürr–Høyer style.

use serde::Serialize;

use crate::align::{
    decode_alignment, path_profit, Alignment, ProfitParams, Sequence, TransitionString,
};
use crate::circuit::adder::emit_compare_gt;
use crate::circuit::profit::{AlignmentPipeline, CharMode};
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::sim::gate::{Control, Gate};
use crate::sim::rng::Prng;
use crate::sim::state::{BackendKind, QuantumState};

/// Default ceiling on simulated qubits for a search run.
pub const DEFAULT_MAX_QUBITS: usize = 28;

/// Search tuning knobs. `budget_c` bounds the total number of Grover
/// iterations across all rounds by `ceil(budget_c * sqrt(4^t))`.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub seed: u64,
    pub backend: BackendKind,
    pub char_mode: CharMode,
    pub budget_c: f64,
    /// Multiplier applied to the iteration-range guess after a failed round.
    pub growth: f64,
    pub max_rounds: usize,
    pub max_qubits: usize,
}

impl SearchConfig {
    pub fn new(seed: u64) -> SearchConfig {
        SearchConfig {
            seed,
            backend: BackendKind::Sparse,
            char_mode: CharMode::Reuse,
            budget_c: 3.0,
            growth: 8.0 / 7.0,
            max_rounds: 10_000,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

/// One adaptive round: how many Grover iterations were applied, what was
/// measured, and how the threshold moved.
#[derive(Debug, Clone, Serialize)]
pub struct TraceRound {
    pub round: usize,
    pub iterations: u64,
    pub measured: String,
    pub profit: u64,
    pub valid: bool,
    pub improved: bool,
    pub threshold_after: i64,
}

/// Full transcript of a search run.
#[derive(Debug, Clone, Serialize)]
pub struct SearchTrace {
    pub initial_sample: String,
    pub initial_threshold: i64,
    pub budget: u64,
    pub total_iterations: u64,
    pub rounds: Vec<TraceRound>,
    /// True when the run stopped because the profit bound was reached.
    pub reached_bound: bool,
}

/// The search's answer: a classically re-scored, provably valid path.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub profit: u64,
    pub path: TransitionString,
    pub alignment: Alignment,
}

/// Success probability of textbook amplitude amplification: starting from
/// uniform over `total` items of which `marked` are good, after `rounds`
/// iterations the chance of measuring a good item is
/// `sin²((2r+1)·asin(sqrt(marked/total)))`.
pub fn grover_success_probability(marked: u64, total: u64, rounds: u64) -> f64 {
    if total == 0 {
        return 0.0;
    }
    let theta = (marked as f64 / total as f64).sqrt().min(1.0).asin();
    ((2 * rounds + 1) as f64 * theta).sin().powi(2)
}

/// Builds the phase oracle for `profit > threshold AND valid`.
///
/// The scoring chain runs forward, a comparator drives the borrow qubit,
/// borrow AND valid are copied onto the flag, a Z on the flag imprints the
/// phase, and everything uncomputes in reverse. The step register is only
/// ever a control, so the whole block is diagonal in the branch basis:
/// amplitude -1 on marked branches, +1 elsewhere, ancillas restored.
pub fn build_phase_oracle(pipeline: &AlignmentPipeline, threshold: i64) -> Result<Circuit> {
    let borrow = pipeline
        .borrow_register()
        .ok_or_else(|| Error::Contract("pipeline built without search ancillas".into()))?;
    let flag = pipeline.flag_register().expect("borrow implies flag");
    let chain = pipeline.chain_circuit()?;

    let mut mark = Circuit::new(pipeline.total_qubits());
    let profit_qubits: Vec<usize> = pipeline.profit_register().qubits().collect();
    let mut cmp = Circuit::new(pipeline.total_qubits());
    emit_compare_gt(&mut cmp, &profit_qubits, borrow.qubit(0), threshold, &[])?;
    let copy = Gate::mcx(
        vec![
            Control::pos(borrow.qubit(0)),
            Control::pos(pipeline.valid_register().qubit(0)),
        ],
        flag.qubit(0),
    );
    mark.append(&cmp)?;
    mark.push(copy.clone())?;
    mark.push(Gate::z(flag.qubit(0)))?;
    mark.push(copy)?;
    mark.append(&cmp.inverse())?;

    let mut oracle = chain.clone();
    oracle.append(&mark)?;
    oracle.append(&chain.inverse())?;
    Ok(oracle)
}

/// Builds inversion about the uniform superposition over the step register:
/// exactly `2|ψ⟩⟨ψ| − I`, including the global sign (a ZXZX tail on one
/// step qubit), so the uniform state is a literal fixed point.
pub fn build_diffusion(pipeline: &AlignmentPipeline) -> Result<Circuit> {
    let step = pipeline.step_register();
    let mut c = Circuit::new(pipeline.total_qubits());
    if step.width == 0 {
        return Ok(c);
    }
    let qubits: Vec<usize> = step.qubits().collect();
    for &q in &qubits {
        c.push(Gate::h(q))?;
    }
    for &q in &qubits {
        c.push(Gate::x(q))?;
    }
    let (&phase_target, rest) = qubits.split_first().expect("nonempty step register");
    c.push(Gate::cphase(
        std::f64::consts::PI,
        phase_target,
        rest.iter().map(|&q| Control::pos(q)).collect(),
    ))?;
    for &q in &qubits {
        c.push(Gate::x(q))?;
    }
    for &q in &qubits {
        c.push(Gate::h(q))?;
    }
    // H·X·MCZ·X·H is −(2|ψ⟩⟨ψ| − I); ZXZX = −I fixes the sign.
    for _ in 0..2 {
        c.push(Gate::z(phase_target))?;
        c.push(Gate::x(phase_target))?;
    }
    Ok(c)
}

/// Applies `rounds` Grover iterations (oracle then diffusion) to `state`.
pub fn grover_iterate(
    state: &mut QuantumState,
    oracle: &Circuit,
    diffusion: &Circuit,
    rounds: u64,
) -> Result<()> {
    for _ in 0..rounds {
        oracle.run(state)?;
        diffusion.run(state)?;
    }
    Ok(())
}

fn random_branch(rng: &mut Prng, t: usize) -> u64 {
    if t == 0 {
        0
    } else {
        rng.next_u64() & ((1u64 << (2 * t)) - 1)
    }
}

/// Runs the adaptive maximum search and returns the best valid path found,
/// plus a full transcript.
///
/// Every measured candidate is re-scored classically, so a returned result
/// is always a genuine valid path with the stated profit. The search stops
/// when the iteration budget `ceil(budget_c · sqrt(4^t))` is exhausted, the
/// proven profit bound is reached, or `max_rounds` rounds have run.
pub fn find_max(
    s1: &Sequence,
    s2: &Sequence,
    params: ProfitParams,
    config: &SearchConfig,
) -> Result<(SearchResult, SearchTrace)> {
    let pipeline = AlignmentPipeline::new(s1.clone(), s2.clone(), params, config.char_mode, true)?;
    if pipeline.total_qubits() > config.max_qubits {
        return Err(Error::TooLarge(format!(
            "instance needs {} qubits, limit is {} (simulation would be intractable)",
            pipeline.total_qubits(),
            config.max_qubits
        )));
    }
    let t = pipeline.steps();
    let bound = pipeline.profit_bound();
    let mut rng = Prng::from_seed(config.seed);

    // Threshold seeding: one uniformly random branch, scored classically.
    let first_bits = random_branch(&mut rng, t);
    let first_path = TransitionString::from_code_bits(first_bits, t);
    let (first_profit, first_valid) = path_profit(&first_path, s1, s2, params);
    let mut threshold: i64 = if first_valid { first_profit as i64 } else { -1 };
    let mut best: Option<TransitionString> = first_valid.then(|| first_path.clone());

    let budget = (config.budget_c * (1u64 << t) as f64).ceil() as u64;
    let mut trace = SearchTrace {
        initial_sample: first_path.to_string(),
        initial_threshold: threshold,
        budget,
        total_iterations: 0,
        rounds: Vec::new(),
        reached_bound: first_valid && first_profit == bound,
    };

    let diffusion = build_diffusion(&pipeline)?;
    let prepare = pipeline.prepare_circuit()?;
    let mut oracle: Option<(i64, Circuit)> = None;
    let mut range = 1.0f64;
    let range_cap = (1u64 << t) as f64; // sqrt(4^t)

    while !trace.reached_bound
        && trace.total_iterations < budget
        && trace.rounds.len() < config.max_rounds
    {
        if oracle.as_ref().map(|(v, _)| *v) != Some(threshold) {
            oracle = Some((threshold, build_phase_oracle(&pipeline, threshold)?));
        }
        let oracle = &oracle.as_ref().expect("just built").1;
        let guess = (rng.next_f64() * range) as u64;
        let iterations = guess.min(budget - trace.total_iterations);

        let mut state = QuantumState::zero(config.backend, pipeline.total_qubits())?;
        prepare.run(&mut state)?;
        grover_iterate(&mut state, oracle, &diffusion, iterations)?;
        let measured = state.measure_register(pipeline.step_register(), &mut rng)?;
        trace.total_iterations += iterations;

        let path = TransitionString::from_code_bits(measured, t);
        let (profit, valid) = path_profit(&path, s1, s2, params);
        let improved = valid && profit as i64 > threshold;
        if improved {
            threshold = profit as i64;
            best = Some(path.clone());
            range = 1.0;
            trace.reached_bound = profit == bound;
        } else {
            range = (range * config.growth).min(range_cap);
        }
        trace.rounds.push(TraceRound {
            round: trace.rounds.len(),
            iterations,
            measured: path.to_string(),
            profit,
            valid,
            improved,
            threshold_after: threshold,
        });
    }

    let Some(path) = best else {
        return Err(Error::SearchExhausted);
    };
    let alignment = decode_alignment(&path, s1, s2, params)?;
    let result = SearchResult {
        profit: threshold as u64,
        path: path.canonical(),
        alignment,
    };
    Ok((result, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::align::{max_profit_bound, path_track};
    use crate::oracle::dp_max;
    use crate::sim::state::max_amplitude_delta;

    fn pipeline(s1: &str, s2: &str) -> AlignmentPipeline {
        AlignmentPipeline::new(
            s1.parse().unwrap(),
            s2.parse().unwrap(),
            ProfitParams::default(),
            CharMode::Reuse,
            true,
        )
        .unwrap()
    }

    /// Classically enumerate the branches the oracle must mark.
    fn marked_branches(p: &AlignmentPipeline, threshold: i64) -> Vec<u64> {
        let (s1, s2) = p.sequences();
        (0..1u64 << (2 * p.steps()))
            .filter(|&bits| {
                let path = TransitionString::from_code_bits(bits, p.steps());
                let track = path_track(&path, s1, s2, p.params());
                track.valid && track.profit as i64 > threshold
            })
            .collect()
    }

    #[test]
    fn oracle_is_diagonal_with_the_predicted_signs() {
        let p = pipeline("A", "A");
        let threshold = 2;
        let marked = marked_branches(&p, threshold);
        // ("A","A") with profit > 2: exactly the two diagonal paths DN, ND.
        assert_eq!(marked.len(), 2);
        let oracle = build_phase_oracle(&p, threshold).unwrap();
        let mut s = QuantumState::zero(BackendKind::Sparse, p.total_qubits()).unwrap();
        p.prepare_circuit().unwrap().run(&mut s).unwrap();
        oracle.run(&mut s).unwrap();
        for bits in 0..16u64 {
            let amp = s.amplitude(bits); // ancillas all restored to 0
            let want = if marked.contains(&bits) { -0.25 } else { 0.25 };
            assert!(
                (amp.re - want).abs() < 1e-9 && amp.im.abs() < 1e-9,
                "branch {bits:04b}: {amp} want {want}"
            );
        }
    }

    #[test]
    fn always_true_threshold_marks_exactly_the_valid_paths() {
        let p = pipeline("A", "C");
        let marked = marked_branches(&p, -1);
        assert_eq!(marked.len(), 4); // HV, VH, DN, ND
        let oracle = build_phase_oracle(&p, -1).unwrap();
        let mut s = QuantumState::zero(BackendKind::Sparse, p.total_qubits()).unwrap();
        p.prepare_circuit().unwrap().run(&mut s).unwrap();
        oracle.run(&mut s).unwrap();
        for &bits in &marked {
            assert!((s.amplitude(bits).re + 0.25).abs() < 1e-9);
        }
    }

    #[test]
    fn diffusion_fixes_the_uniform_state_and_squares_to_identity() {
        let p = pipeline("A", "C");
        let diffusion = build_diffusion(&p).unwrap();
        let mut uniform = QuantumState::zero(BackendKind::Sparse, p.total_qubits()).unwrap();
        p.prepare_circuit().unwrap().run(&mut uniform).unwrap();
        let mut once = uniform.clone();
        diffusion.run(&mut once).unwrap();
        assert!(max_amplitude_delta(&uniform, &once) < 1e-10);

        // On a non-uniform state, applying it twice is the identity.
        let mut s = QuantumState::zero(BackendKind::Sparse, p.total_qubits()).unwrap();
        s.apply(&Gate::x(p.step_register().qubit(1))).unwrap();
        s.apply(&Gate::h(p.step_register().qubit(2))).unwrap();
        let before = s.clone();
        diffusion.run(&mut s).unwrap();
        assert!(max_amplitude_delta(&before, &s) > 0.1); // it did something
        diffusion.run(&mut s).unwrap();
        assert!(max_amplitude_delta(&before, &s) < 1e-10);
    }

    #[test]
    fn diffusion_inverts_a_basis_state_about_the_mean() {
        // On one 4-value register (t=1): amplitudes 2/N - 1 on the start
        // state and 2/N elsewhere.
        let p = pipeline("A", "");
        let diffusion = build_diffusion(&p).unwrap();
        let mut s = QuantumState::zero(BackendKind::Sparse, p.total_qubits()).unwrap();
        diffusion.run(&mut s).unwrap();
        assert!((s.amplitude(0).re - (-0.5)).abs() < 1e-10);
        for bits in 1..4u64 {
            assert!((s.amplitude(bits).re - 0.5).abs() < 1e-10);
        }
    }

    #[test]
    fn single_iteration_is_certain_on_a_one_in_four_instance() {
        // ("A", ""): one marked branch (H, profit 1 > 0) out of 4.
        // sin²(3·asin(1/2)) = 1, so one iteration must succeed surely.
        assert!((grover_success_probability(1, 4, 1) - 1.0).abs() < 1e-12);
        let p = pipeline("A", "");
        let oracle = build_phase_oracle(&p, 0).unwrap();
        let diffusion = build_diffusion(&p).unwrap();
        let mut s = QuantumState::zero(BackendKind::Sparse, p.total_qubits()).unwrap();
        p.prepare_circuit().unwrap().run(&mut s).unwrap();
        grover_iterate(&mut s, &oracle, &diffusion, 1).unwrap();
        let step = p.step_register();
        // Horizontal has code 2.
        let mass = s.probability_where(|k| step.value(k) == 2);
        assert!((mass - 1.0).abs() < 1e-9, "mass {mass}");
    }

    #[test]
    fn single_iteration_is_certain_on_a_four_in_sixteen_instance() {
        // ("A", "C") with always-true threshold: 4 marked of 16.
        assert!((grover_success_probability(4, 16, 1) - 1.0).abs() < 1e-12);
        let p = pipeline("A", "C");
        let marked = marked_branches(&p, -1);
        let oracle = build_phase_oracle(&p, -1).unwrap();
        let diffusion = build_diffusion(&p).unwrap();
        let mut s = QuantumState::zero(BackendKind::Sparse, p.total_qubits()).unwrap();
        p.prepare_circuit().unwrap().run(&mut s).unwrap();
        grover_iterate(&mut s, &oracle, &diffusion, 1).unwrap();
        let step = p.step_register();
        let mass = s.probability_where(|k| marked.contains(&step.value(k)));
        assert!((mass - 1.0).abs() < 1e-9, "mass {mass}");
    }

    #[test]
    fn simulated_success_tracks_the_closed_form_for_general_rounds() {
        // ("A", "A") threshold 2: k=2, N=16. Compare the simulated marked
        // mass against the closed form for r = 0..4.
        let p = pipeline("A", "A");
        let marked = marked_branches(&p, 2);
        let oracle = build_phase_oracle(&p, 2).unwrap();
        let diffusion = build_diffusion(&p).unwrap();
        for r in 0..5u64 {
            let mut s = QuantumState::zero(BackendKind::Sparse, p.total_qubits()).unwrap();
            p.prepare_circuit().unwrap().run(&mut s).unwrap();
            grover_iterate(&mut s, &oracle, &diffusion, r).unwrap();
            let step = p.step_register();
            let mass = s.probability_where(|k| marked.contains(&step.value(k)));
            let want = grover_success_probability(2, 16, r);
            assert!((mass - want).abs() < 1e-9, "r={r}: {mass} vs {want}");
        }
    }

    #[test]
    fn no_marked_items_leaves_the_uniform_state_alone() {
        assert_eq!(grover_success_probability(0, 16, 3), 0.0);
        // ("A","A") already has max profit 3, so threshold 3 marks nothing
        // and oracle + diffusion is the identity on the prepared state.
        let p = pipeline("A", "A");
        assert!(marked_branches(&p, 3).is_empty());
        let oracle = build_phase_oracle(&p, 3).unwrap();
        let diffusion = build_diffusion(&p).unwrap();
        let mut s = QuantumState::zero(BackendKind::Sparse, p.total_qubits()).unwrap();
        p.prepare_circuit().unwrap().run(&mut s).unwrap();
        let before = s.clone();
        grover_iterate(&mut s, &oracle, &diffusion, 2).unwrap();
        assert!(max_amplitude_delta(&before, &s) < 1e-9);
    }

    #[test]
    fn search_finds_the_optimum_on_small_instances() {
        for (s1, s2) in [("A", "A"), ("A", "C"), ("AT", "AT"), ("AC", "GT"), ("A", "")] {
            let seq1: Sequence = s1.parse().unwrap();
            let seq2: Sequence = s2.parse().unwrap();
            let params = ProfitParams::default();
            let dp = dp_max(&seq1, &seq2, params);
            let config = SearchConfig::new(11);
            let (result, trace) = find_max(&seq1, &seq2, params, &config).unwrap();
            assert_eq!(result.profit, dp.0, "({s1}, {s2})");
            // Soundness invariants.
            let (profit, valid) = path_profit(
                &result.path.padded(seq1.len() + seq2.len()).unwrap(),
                &seq1,
                &seq2,
                params,
            );
            assert!(valid);
            assert_eq!(profit, result.profit);
            assert!(trace.total_iterations <= trace.budget);
        }
    }

    #[test]
    fn search_respects_its_iteration_budget() {
        let seq1: Sequence = "AT".parse().unwrap();
        let seq2: Sequence = "GC".parse().unwrap();
        for seed in 0..10 {
            let config = SearchConfig::new(seed);
            let (_, trace) = find_max(&seq1, &seq2, ProfitParams::default(), &config).unwrap();
            let t = 4u32;
            let cap = (config.budget_c * 2f64.powi(t as i32)).ceil() as u64;
            assert!(trace.total_iterations <= cap);
            assert_eq!(
                trace.total_iterations,
                trace.rounds.iter().map(|r| r.iterations).sum::<u64>()
            );
        }
    }

    #[test]
    fn empty_instance_resolves_without_quantum_work() {
        let seq: Sequence = "".parse().unwrap();
        let (result, trace) =
            find_max(&seq, &seq, ProfitParams::default(), &SearchConfig::new(3)).unwrap();
        assert_eq!(result.profit, 0);
        assert_eq!(trace.total_iterations, 0);
        assert!(trace.reached_bound);
        assert_eq!(result.alignment.top, "");
    }

    #[test]
    fn oversized_instances_are_rejected_up_front() {
        let s1: Sequence = "ATGGTCAGC".parse().unwrap();
        let s2: Sequence = "ACGGTC".parse().unwrap();
        let err = find_max(&s1, &s2, ProfitParams::default(), &SearchConfig::new(0)).unwrap_err();
        assert!(matches!(err, Error::TooLarge(_)), "{err}");
    }

    #[test]
    fn identical_seeds_reproduce_identical_traces() {
        let seq1: Sequence = "AT".parse().unwrap();
        let seq2: Sequence = "A".parse().unwrap();
        let run = || {
            let (r, t) = find_max(&seq1, &seq2, ProfitParams::default(), &SearchConfig::new(99))
                .unwrap();
            (
                r.profit,
                r.path.to_string(),
                t.total_iterations,
                t.rounds.iter().map(|x| x.measured.clone()).collect::<Vec<_>>(),
            )
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn bound_equality_stops_the_search_early() {
        // ("AT", "AT"): the all-diagonal path reaches the profit bound, so
        // a run that finds it must stop with reached_bound set.
        let seq: Sequence = "AT".parse().unwrap();
        let params = ProfitParams::default();
        let (result, trace) =
            find_max(&seq, &seq, params, &SearchConfig::new(5)).unwrap();
        assert_eq!(result.profit, max_profit_bound(2, 2, params));
        assert!(trace.reached_bound);
        assert_eq!(result.alignment.top, "AT");
        assert_eq!(result.alignment.bottom, "AT");
    }
}
