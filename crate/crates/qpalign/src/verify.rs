//! Self-verification harness: register-exact classical equivalence, dense
//! versus sparse backend agreement, and statistical quality of the maximum
//! search. Shared by the `verify` subcommand and the acceptance tests.

use serde::Serialize;

use crate::align::{path_profit, ProfitParams, Sequence, TransitionString};
use crate::circuit::adder::emit_add_const;
use crate::circuit::profit::{AlignmentPipeline, CharMode};
use crate::circuit::qft::emit_qft;
use crate::circuit::qram::emit_table_lookup;
use crate::circuit::Circuit;
use crate::grover::{build_diffusion, build_phase_oracle, find_max, SearchConfig};
use crate::oracle::dp_max;
use crate::sim::gate::{Control, Gate};
use crate::sim::layout::RegisterLayout;
use crate::sim::rng::Prng;
use crate::sim::state::{max_amplitude_delta, BackendKind, QuantumState};
use crate::error::{Error, Result};

/// Fault-injection hook: when this environment variable is set, the
/// classical-track check deliberately corrupts one expected value. It exists
/// so the test suite can prove the harness actually detects failures.
pub const TAMPER_ENV: &str = "QPALIGN_VERIFY_TAMPER";

/// Backend agreement tolerance on any single amplitude.
pub const BACKEND_TOLERANCE: f64 = 1e-10;

/// Required fraction of search runs that recover the DP optimum.
pub const OPTIMALITY_REQUIREMENT: f64 = 0.9;

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, cases: u64, failures: u64, detail: String) -> CheckOutcome {
        CheckOutcome {
            name: name.to_string(),
            cases,
            failures,
            passed: failures == 0,
            detail,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random instances for the classical-track check.
    pub pairs: usize,
    /// Search runs for the statistical checks.
    pub runs: usize,
    /// Maximum sequence length of generated instances.
    pub max_len: usize,
    pub budget_c: f64,
    pub max_qubits: usize,
}

impl Default for VerifyConfig {
    fn default() -> VerifyConfig {
        VerifyConfig {
            seed: 7,
            pairs: 50,
            runs: 50,
            max_len: 2,
            budget_c: 3.0,
            max_qubits: crate::grover::DEFAULT_MAX_QUBITS,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub seed: u64,
    pub max_len: usize,
    pub pairs: usize,
    pub runs: usize,
    pub budget_c: f64,
    pub checks: Vec<CheckOutcome>,
    pub passed: bool,
    pub wall_time_ms: u128,
}

fn random_sequence(rng: &mut Prng, max_len: usize) -> Sequence {
    use crate::align::Base;
    let len = rng.below(max_len as u64 + 1) as usize;
    let bases = (0..len)
        .map(|_| match rng.below(4) {
            0 => Base::A,
            1 => Base::C,
            2 => Base::G,
            _ => Base::T,
        })
        .collect();
    Sequence::new(bases)
}

/// All sixteen single-base instance pairs.
fn all_1x1_pairs() -> Vec<(Sequence, Sequence)> {
    let bases = ["A", "C", "G", "T"];
    let mut out = Vec::new();
    for a in bases {
        for b in bases {
            out.push((a.parse().unwrap(), b.parse().unwrap()));
        }
    }
    out
}

/// Checks that for every branch of every instance, the scoring chain drives
/// the counters, the (modular) profit accumulator, and the validity bit to
/// exactly the classically tracked values.
///
/// The sixteen single-base pairs are exercised branch by branch on basis
/// states; the seeded random instances are exercised in one shot each by
/// running the chain on the uniform branch superposition, where linearity
/// puts amplitude `2^-t` on each branch's expected full register image —
/// any deviating branch would move its amplitude elsewhere.
pub fn check_classical_track(seed: u64, pairs: usize, max_len: usize) -> Result<CheckOutcome> {
    let tamper = std::env::var_os(TAMPER_ENV).is_some();
    let params = ProfitParams::default();
    let mut cases = 0u64;
    let mut failures = 0u64;

    for (s1, s2) in all_1x1_pairs() {
        let p = AlignmentPipeline::new(s1, s2, params, CharMode::Reuse, false)?;
        let chain = p.chain_circuit()?;
        let t = p.steps();
        for bits in 0..1u64 << (2 * t) {
            let path = TransitionString::from_code_bits(bits, t);
            let mut want = p.expected_basis_index(&path)?;
            if tamper && cases == 7 {
                want ^= 1 << p.valid_register().qubit(0);
            }
            let mut state = QuantumState::zero(BackendKind::Sparse, p.total_qubits())?;
            for q in 0..2 * t {
                if bits >> q & 1 == 1 {
                    state.apply(&Gate::x(p.step_register().qubit(q)))?;
                }
            }
            chain.run(&mut state)?;
            cases += 1;
            if state.expect_basis(want, 1e-9).is_err() {
                failures += 1;
            }
        }
    }

    let mut rng = Prng::from_seed(seed);
    for _ in 0..pairs {
        let s1 = random_sequence(&mut rng, max_len);
        let s2 = random_sequence(&mut rng, max_len);
        let p = AlignmentPipeline::new(s1, s2, params, CharMode::Reuse, false)?;
        let t = p.steps();
        let mut state = QuantumState::zero(BackendKind::Sparse, p.total_qubits())?;
        p.full_circuit()?.run(&mut state)?;
        let amp_want = 0.5f64.powi(t as i32);
        for bits in 0..1u64 << (2 * t) {
            let path = TransitionString::from_code_bits(bits, t);
            let idx = p.expected_basis_index(&path)?;
            let amp = state.amplitude(idx);
            cases += 1;
            if (amp.re - amp_want).abs() > 1e-9 || amp.im.abs() > 1e-9 {
                failures += 1;
            }
        }
    }

    Ok(CheckOutcome::new(
        "classical_track",
        cases,
        failures,
        format!("{cases} branch images compared against the classical walk"),
    ))
}

fn backend_pair(n: usize) -> Result<(QuantumState, QuantumState)> {
    Ok((
        QuantumState::zero(BackendKind::Dense, n)?,
        QuantumState::zero(BackendKind::Sparse, n)?,
    ))
}

/// Runs a fixed circuit corpus on both backends and compares every
/// amplitude. Covers the Fourier transform, controlled constant addition,
/// table lookup, the full scoring pipeline on 1x1 and 2x2 instances, and
/// one whole Grover iteration.
pub fn check_backend_equivalence() -> Result<CheckOutcome> {
    let params = ProfitParams::default();
    let mut cases = 0u64;
    let mut failures = 0u64;
    let mut worst = 0.0f64;
    let mut run_case = |prep: &Circuit, body: &Circuit| -> Result<()> {
        let (mut dense, mut sparse) = backend_pair(body.num_qubits())?;
        for s in [&mut dense, &mut sparse] {
            prep.run(s)?;
            body.run(s)?;
        }
        let delta = max_amplitude_delta(&dense, &sparse);
        worst = worst.max(delta);
        cases += 1;
        if delta > BACKEND_TOLERANCE {
            failures += 1;
        }
        Ok(())
    };

    // Fourier transform from two different basis states.
    for x in [0b0101u64, 0b1110] {
        let mut prep = Circuit::new(4);
        for b in 0..4 {
            if x >> b & 1 == 1 {
                prep.push(Gate::x(b))?;
            }
        }
        let mut qft = Circuit::new(4);
        emit_qft(&mut qft, &[0, 1, 2, 3])?;
        run_case(&prep, &qft)?;
    }

    // Controlled addition on a partly superposed register.
    {
        let mut prep = Circuit::new(6);
        prep.extend([Gate::h(0), Gate::h(4), Gate::x(5)])?;
        let mut add = Circuit::new(6);
        emit_add_const(&mut add, &[0, 1, 2, 3], 11, &[Control::pos(4), Control::neg(5)])?;
        emit_add_const(&mut add, &[0, 1, 2, 3], 6, &[Control::pos(5)])?;
        run_case(&prep, &add)?;
    }

    // Table lookup over a superposed address.
    {
        let mut layout = RegisterLayout::new();
        let addr = layout.push("addr", 2)?;
        let data = layout.push("data", 2)?;
        let hit = layout.push("hit", 1)?;
        let mut prep = Circuit::new(5);
        prep.extend([Gate::h(addr.qubit(0)), Gate::h(addr.qubit(1))])?;
        let mut lookup = Circuit::new(5);
        let table: Sequence = "ATG".parse().unwrap();
        emit_table_lookup(&mut lookup, &table, addr, data, Some(hit.qubit(0)), &[])?;
        run_case(&prep, &lookup)?;
    }

    // Full scoring pipeline, 1x1 and 2x2.
    for (a, b) in [("A", "C"), ("AC", "GT")] {
        let p = AlignmentPipeline::new(
            a.parse().unwrap(),
            b.parse().unwrap(),
            params,
            CharMode::Reuse,
            false,
        )?;
        run_case(&Circuit::new(p.total_qubits()), &p.full_circuit()?)?;
    }

    // One whole Grover iteration (oracle plus diffusion).
    {
        let p = AlignmentPipeline::new(
            "A".parse().unwrap(),
            "C".parse().unwrap(),
            params,
            CharMode::Reuse,
            true,
        )?;
        let mut round = p.full_circuit()?;
        round.append(&build_phase_oracle(&p, -1)?)?;
        round.append(&build_diffusion(&p)?)?;
        run_case(&Circuit::new(p.total_qubits()), &round)?;
    }

    Ok(CheckOutcome::new(
        "backend_equivalence",
        cases,
        failures,
        format!("worst amplitude deviation {worst:.3e} (tolerance {BACKEND_TOLERANCE:.0e})"),
    ))
}

/// One search run's record inside a batch.
#[derive(Debug, Clone, Serialize)]
pub struct SearchRun {
    pub seq_a: String,
    pub seq_b: String,
    pub dp_profit: u64,
    pub found_profit: u64,
    pub found_path: String,
    pub sound: bool,
    pub optimal: bool,
    pub iterations: u64,
    pub budget: u64,
}

/// Outcome of a batch of seeded search runs on random instances.
#[derive(Debug, Clone, Serialize)]
pub struct SearchBatch {
    pub runs: Vec<SearchRun>,
}

/// Runs `runs` searches on seeded random instances with lengths up to
/// `max_len` and records soundness, optimality, and budget use per run.
pub fn run_search_batch(
    seed: u64,
    runs: usize,
    max_len: usize,
    budget_c: f64,
    max_qubits: usize,
) -> Result<SearchBatch> {
    let params = ProfitParams::default();
    let mut rng = Prng::from_seed(seed ^ 0x5ea5c4ba7c4);
    let mut out = Vec::with_capacity(runs);
    for i in 0..runs {
        let s1 = random_sequence(&mut rng, max_len);
        let s2 = random_sequence(&mut rng, max_len);
        let (dp_profit, _) = dp_max(&s1, &s2, params);
        let mut config = SearchConfig::new(seed.wrapping_add(i as u64));
        config.budget_c = budget_c;
        config.max_qubits = max_qubits;
        let (result, trace) = find_max(&s1, &s2, params, &config)?;
        // Soundness is re-established here, independently of the search's
        // own bookkeeping: the returned path must really walk to (m, n)
        // and really earn the claimed profit.
        let t = s1.len() + s2.len();
        let (profit, valid) = path_profit(&result.path.padded(t)?, &s1, &s2, params);
        out.push(SearchRun {
            seq_a: s1.to_string(),
            seq_b: s2.to_string(),
            dp_profit,
            found_profit: result.profit,
            found_path: result.path.to_string(),
            sound: valid && profit == result.profit,
            optimal: result.profit == dp_profit,
            iterations: trace.total_iterations,
            budget: trace.budget,
        });
    }
    Ok(SearchBatch { runs: out })
}

/// Every returned result must be a genuine valid path with its claimed
/// profit. Required success rate: 100%.
pub fn check_search_soundness(batch: &SearchBatch) -> CheckOutcome {
    let cases = batch.runs.len() as u64;
    let failures = batch.runs.iter().filter(|r| !r.sound).count() as u64;
    CheckOutcome::new(
        "search_soundness",
        cases,
        failures,
        format!("{}/{cases} results re-validated classically", cases - failures),
    )
}

/// At least 90% of runs must return the DP optimum.
pub fn check_search_optimality(batch: &SearchBatch) -> CheckOutcome {
    let cases = batch.runs.len() as u64;
    let optimal = batch.runs.iter().filter(|r| r.optimal).count() as u64;
    let rate = if cases == 0 {
        0.0
    } else {
        optimal as f64 / cases as f64
    };
    let failures = (rate < OPTIMALITY_REQUIREMENT) as u64;
    CheckOutcome::new(
        "search_optimality",
        cases,
        failures,
        format!(
            "{optimal}/{cases} runs optimal ({:.0}% required)",
            OPTIMALITY_REQUIREMENT * 100.0
        ),
    )
}

/// Every run must stay within `ceil(budget_c · sqrt(4^t))` total Grover
/// iterations.
pub fn check_iteration_budget(batch: &SearchBatch) -> CheckOutcome {
    let cases = batch.runs.len() as u64;
    let failures = batch
        .runs
        .iter()
        .filter(|r| r.iterations > r.budget)
        .count() as u64;
    let worst = batch
        .runs
        .iter()
        .map(|r| r.iterations)
        .max()
        .unwrap_or(0);
    CheckOutcome::new(
        "iteration_budget",
        cases,
        failures,
        format!("max {worst} iterations in any run, each capped by its budget"),
    )
}

/// Runs the whole verification suite.
pub fn run_verification(config: &VerifyConfig) -> Result<VerifyReport> {
    let start = std::time::Instant::now();
    // Guard against intractable instance sizes before doing any work.
    let probe = AlignmentPipeline::new(
        Sequence::new(vec![crate::align::Base::T; config.max_len]),
        Sequence::new(vec![crate::align::Base::T; config.max_len]),
        ProfitParams::default(),
        CharMode::Reuse,
        true,
    )?;
    if probe.total_qubits() > config.max_qubits {
        return Err(Error::TooLarge(format!(
            "max-len {} needs up to {} qubits, limit is {}",
            config.max_len,
            probe.total_qubits(),
            config.max_qubits
        )));
    }

    let mut checks = vec![
        check_classical_track(config.seed, config.pairs, config.max_len)?,
        check_backend_equivalence()?,
    ];
    let batch = run_search_batch(
        config.seed,
        config.runs,
        config.max_len,
        config.budget_c,
        config.max_qubits,
    )?;
    checks.push(check_search_soundness(&batch));
    checks.push(check_search_optimality(&batch));
    checks.push(check_iteration_budget(&batch));

    let passed = checks.iter().all(|c| c.passed);
    Ok(VerifyReport {
        schema_version: 1,
        seed: config.seed,
        max_len: config.max_len,
        pairs: config.pairs,
        runs: config.runs,
        budget_c: config.budget_c,
        checks,
        passed,
        wall_time_ms: start.elapsed().as_millis(),
    })
}
