//! Command-line interface: `align`, `resources`, `verify`, and `export`.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid input, 3 instance too
//! large to simulate, 4 verification failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::align::{decode_alignment, max_profit_bound, ProfitParams, Sequence};
use crate::circuit::export::{export_circuit, CircuitFormat};
use crate::circuit::profit::{AlignmentPipeline, CharMode};
use crate::circuit::resources::ResourceEstimate;
use crate::error::{Error, Result};
use crate::fasta::read_pair;
use crate::grover::{build_phase_oracle, find_max, SearchConfig, DEFAULT_MAX_QUBITS};
use crate::oracle::{brute_force_max, dp_max};
use crate::report::{QuantumRunInfo, RunReport};
use crate::verify::{run_verification, VerifyConfig};

/// Environment variable that overrides the simulated-qubit ceiling.
pub const MAX_QUBITS_ENV: &str = "QPALIGN_MAX_QUBITS";

#[derive(Parser)]
#[command(
    name = "qpalign",
    version,
    about = "Pairwise DNA sequence alignment on a simulated quantum pipeline"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Align two sequences and report the maximum-profit path.
    Align(AlignArgs),
    /// Report the qubit and gate footprint for an instance size.
    Resources(ResourcesArgs),
    /// Run the self-verification suite.
    Verify(VerifyArgs),
    /// Export the scoring circuit (or a search oracle) to a file format.
    Export(ExportArgs),
}

#[derive(Args)]
struct SequenceInput {
    /// First sequence (A/C/G/T).
    #[arg(long, value_name = "BASES")]
    seq_a: Option<String>,
    /// Second sequence (A/C/G/T).
    #[arg(long, value_name = "BASES")]
    seq_b: Option<String>,
    /// FASTA file holding exactly two records (alternative to --seq-a/--seq-b).
    #[arg(long, value_name = "FILE", conflicts_with_all = ["seq_a", "seq_b"])]
    fasta: Option<PathBuf>,
}

impl SequenceInput {
    fn resolve(&self) -> Result<(Sequence, Sequence)> {
        match (&self.fasta, &self.seq_a, &self.seq_b) {
            (Some(path), None, None) => {
                let (a, b) = read_pair(path)?;
                Ok((a.sequence, b.sequence))
            }
            (None, Some(a), Some(b)) => Ok((a.parse()?, b.parse()?)),
            _ => Err(Error::Contract(
                "provide either --fasta FILE or both --seq-a and --seq-b".into(),
            )),
        }
    }
}

#[derive(Args)]
struct ParamArgs {
    /// Base profit per consumed character.
    #[arg(long, default_value_t = 1)]
    profit_x: u64,
    /// Extra profit of a mismatched diagonal (x + y total).
    #[arg(long, default_value_t = 1)]
    profit_y: u64,
    /// Extra profit of a matched diagonal (x + z total); requires z > y, z >= x.
    #[arg(long, default_value_t = 2)]
    profit_z: u64,
}

impl ParamArgs {
    fn resolve(&self) -> Result<ProfitParams> {
        ProfitParams::new(self.profit_x, self.profit_y, self.profit_z)
    }
}

#[derive(Args)]
struct JsonArg {
    /// Emit JSON: bare `--json` writes it to stdout, `--json FILE` to a file.
    #[arg(long, value_name = "FILE", num_args = 0..=1, default_missing_value = "-")]
    json: Option<String>,
}

impl JsonArg {
    /// Returns true when human-readable output should be suppressed.
    fn to_stdout(&self) -> bool {
        self.json.as_deref() == Some("-")
    }

    fn write<T: serde::Serialize>(&self, value: &T) -> Result<()> {
        let Some(dest) = &self.json else {
            return Ok(());
        };
        let text = serde_json::to_string_pretty(value)?;
        if dest == "-" {
            println!("{text}");
        } else {
            std::fs::write(dest, text + "\n")?;
        }
        Ok(())
    }
}

#[derive(Args)]
struct AlignArgs {
    #[command(flatten)]
    input: SequenceInput,
    #[command(flatten)]
    params: ParamArgs,
    /// quantum (adaptive search), dp (dynamic programming), or brute
    /// (exhaustive enumeration).
    #[arg(long, default_value = "dp")]
    mode: String,
    /// Random seed for the quantum search.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Grover iteration budget multiplier: total iterations are capped by
    /// ceil(budget-c * sqrt(4^t)).
    #[arg(long, default_value_t = 3.0)]
    budget_c: f64,
    /// Character scratch allocation: reuse or per-step.
    #[arg(long, default_value = "reuse")]
    char_mode: String,
    /// Statevector backend: sparse or dense.
    #[arg(long, default_value = "sparse")]
    backend: String,
    #[command(flatten)]
    json: JsonArg,
}

#[derive(Args)]
struct ResourcesArgs {
    /// Length of the first sequence.
    #[arg(long)]
    m: usize,
    /// Length of the second sequence.
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    params: ParamArgs,
    /// Character scratch allocation: reuse or per-step.
    #[arg(long, default_value = "reuse")]
    char_mode: String,
    #[command(flatten)]
    json: JsonArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// Random seed for instance generation and the searches.
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Maximum sequence length of generated instances.
    #[arg(long, default_value_t = 2)]
    max_len: usize,
    /// Random instances for the classical-track check.
    #[arg(long, default_value_t = 50)]
    pairs: usize,
    /// Number of search runs for the statistical checks.
    #[arg(long, default_value_t = 50)]
    trials: usize,
    /// Grover iteration budget multiplier per run.
    #[arg(long, default_value_t = 3.0)]
    budget_c: f64,
    #[command(flatten)]
    json: JsonArg,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    input: SequenceInput,
    #[command(flatten)]
    params: ParamArgs,
    /// Output format: portable-qasm or json.
    #[arg(long, default_value = "portable-qasm")]
    format: String,
    /// Output file.
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Character scratch allocation: reuse or per-step.
    #[arg(long, default_value = "reuse")]
    char_mode: String,
    /// Export the phase oracle marking `profit > THRESHOLD AND valid`
    /// instead of the plain scoring circuit.
    #[arg(long, value_name = "THRESHOLD")]
    oracle_threshold: Option<i64>,
}

fn max_qubits_limit() -> usize {
    std::env::var(MAX_QUBITS_ENV)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_QUBITS)
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::TooLarge(_) => 3,
        Error::VerificationFailed(_) => 4,
        Error::InvalidNucleotide { .. }
        | Error::InvalidTransition { .. }
        | Error::InvalidProfitParams(_)
        | Error::InvalidPath(_)
        | Error::Contract(_)
        | Error::CircuitParse(_)
        | Error::Fasta(_) => 2,
        _ => 1,
    }
}

fn run_align(args: &AlignArgs) -> Result<()> {
    let start = std::time::Instant::now();
    let (s1, s2) = args.input.resolve()?;
    let params = args.params.resolve()?;
    let bound = max_profit_bound(s1.len(), s2.len(), params);
    let (a, b) = (s1.to_string(), s2.to_string());

    let mut report = match args.mode.as_str() {
        "dp" => {
            let (profit, path) = dp_max(&s1, &s2, params);
            let alignment = decode_alignment(&path, &s1, &s2, params)?;
            debug_assert_eq!(alignment.profit, profit);
            RunReport::new("dp", &a, &b, params, &alignment, &path.to_string(), bound)
        }
        "brute" => {
            let result = brute_force_max(&s1, &s2, params)?;
            let path = result
                .optimal_paths
                .iter()
                .next()
                .ok_or_else(|| Error::Contract("no valid path exists".into()))?;
            let alignment = decode_alignment(path, &s1, &s2, params)?;
            RunReport::new("brute", &a, &b, params, &alignment, &path.to_string(), bound)
        }
        "quantum" => {
            let mut config = SearchConfig::new(args.seed);
            config.budget_c = args.budget_c;
            config.char_mode = args.char_mode.parse()?;
            config.backend = args.backend.parse()?;
            config.max_qubits = max_qubits_limit();
            let (result, trace) = find_max(&s1, &s2, params, &config)?;
            let path = result.path.to_string();
            let mut r =
                RunReport::new("quantum", &a, &b, params, &result.alignment, &path, bound);
            let pipeline =
                AlignmentPipeline::new(s1.clone(), s2.clone(), params, config.char_mode, true)?;
            r.quantum = Some(QuantumRunInfo {
                seed: args.seed,
                backend: config.backend.name().to_string(),
                char_mode: config.char_mode.name().to_string(),
                budget_c: config.budget_c,
                budget: trace.budget,
                total_iterations: trace.total_iterations,
                rounds: trace.rounds.len(),
                reached_bound: trace.reached_bound,
                total_qubits: pipeline.total_qubits(),
            });
            r
        }
        other => {
            return Err(Error::Contract(format!(
                "unknown mode '{other}' (expected 'quantum', 'dp', or 'brute')"
            )))
        }
    };
    report.wall_time_ms = start.elapsed().as_millis();

    if !args.json.to_stdout() {
        println!("mode    {}", report.mode);
        println!("profit  {}", report.profit);
        println!("path    {}", report.path);
        println!("{}", report.alignment_top);
        println!("{}", report.alignment_bottom);
        if let Some(q) = &report.quantum {
            println!("seed    {}", q.seed);
            println!("qubits  {}", q.total_qubits);
            println!("grover  {}/{} iterations used", q.total_iterations, q.budget);
        }
    }
    args.json.write(&report)?;
    Ok(())
}

fn run_resources(args: &ResourcesArgs) -> Result<()> {
    let params = args.params.resolve()?;
    let char_mode: CharMode = args.char_mode.parse()?;
    let estimate = ResourceEstimate::for_lengths(args.m, args.n, params, char_mode)?;
    if !args.json.to_stdout() {
        println!("m               {}", estimate.m);
        println!("n               {}", estimate.n);
        println!("t               {}", estimate.t);
        println!("node_count      {}", estimate.node_count);
        println!("max_profit_bound {}", estimate.max_profit_bound);
        println!("step_qubits     {}", estimate.step_qubits);
        println!("counter_width   {}", estimate.counter_width);
        println!("profit_width    {}", estimate.profit_width);
        println!("char_qubits     {}", estimate.char_qubits);
        println!("hit_qubits      {}", estimate.hit_qubits);
        println!("total_qubits    {}", estimate.total_qubits);
        if let (Some(g), Some(d)) = (estimate.gate_count, estimate.depth) {
            println!("gate_count      {g}");
            println!("depth           {d}");
        }
    }
    args.json.write(&estimate)?;
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<i32> {
    let config = VerifyConfig {
        seed: args.seed,
        pairs: args.pairs,
        runs: args.trials,
        max_len: args.max_len,
        budget_c: args.budget_c,
        max_qubits: max_qubits_limit(),
    };
    let report = run_verification(&config)?;
    if !args.json.to_stdout() {
        for c in &report.checks {
            println!(
                "check {}: {} ({} cases, {} failures) — {}",
                c.name,
                if c.passed { "PASS" } else { "FAIL" },
                c.cases,
                c.failures,
                c.detail
            );
        }
        println!("overall: {}", if report.passed { "PASS" } else { "FAIL" });
    }
    args.json.write(&report)?;
    Ok(if report.passed { 0 } else { 4 })
}

fn run_export(args: &ExportArgs) -> Result<()> {
    let (s1, s2) = args.input.resolve()?;
    let params = args.params.resolve()?;
    let char_mode: CharMode = args.char_mode.parse()?;
    let format: CircuitFormat = args.format.parse()?;
    let with_search = args.oracle_threshold.is_some();
    let pipeline = AlignmentPipeline::new(s1, s2, params, char_mode, with_search)?;
    let circuit = match args.oracle_threshold {
        Some(threshold) => build_phase_oracle(&pipeline, threshold)?,
        None => pipeline.full_circuit()?,
    };
    let text = export_circuit(pipeline.layout(), &circuit, format)?;
    std::fs::write(&args.out, text)?;
    Ok(())
}

/// Parses arguments from the environment, dispatches, and returns the
/// process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Align(args) => run_align(args).map(|()| 0),
        Command::Resources(args) => run_resources(args).map(|()| 0),
        Command::Verify(args) => run_verify(args),
        Command::Export(args) => run_export(args).map(|()| 0),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            exit_code_for(&e)
        }
    }
}
