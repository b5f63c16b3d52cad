//! Classical alignment baselines: dynamic programming and brute force.
//!
//! Scores the pair (ATGGTCAGC, ACGGTC) under the default profit parameters
//! (x=1, y=1, z=2), prints the optimal edit path and the rendered alignment,
//! and cross-checks the DP answer against exhaustive enumeration.
//!
//! Run with: cargo run --example align_classical

use qpalign::{brute_force_max, decode_alignment, dp_max, ProfitParams, Result, Sequence};

fn main() -> Result<()> {
    let s1: Sequence = "ATGGTCAGC".parse()?;
    let s2: Sequence = "ACGGTC".parse()?;
    let params = ProfitParams::new(1, 1, 2)?;

    // Dynamic programming: O(m*n) table, one optimal traceback.
    let (profit, path) = dp_max(&s1, &s2, params);
    let alignment = decode_alignment(&path, &s1, &s2, params)?;
    println!("dp profit     {profit}");
    println!("dp path       {path}");
    println!("alignment     {}", alignment.top);
    println!("              {}", alignment.bottom);

    // Brute force: enumerate every monotone lattice path through the
    // (m+1) x (n+1) edit graph and keep the best.
    let brute = brute_force_max(&s1, &s2, params)?;
    println!("brute profit  {}", brute.max_profit);
    println!("optimal paths {}", brute.optimal_paths.len());
    assert_eq!(brute.max_profit, profit);
    assert!(brute.optimal_paths.contains(&path));

    // The lattice-path count grows fast (Delannoy numbers): this is why the
    // search space for the quantum pipeline is exponential in m+n.
    println!("lattice paths {}", qpalign::count_paths(s1.len(), s2.len()));
    Ok(())
}
