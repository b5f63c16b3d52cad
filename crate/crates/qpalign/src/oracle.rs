//! Classical reference oracles: exhaustive path enumeration, the dynamic
//! programming maximizer, path counting, and edit distance.
//!
//! These are the ground truth the quantum track is checked against. They are
//! deliberately independent of the circuit code: the brute-force oracle walks
//! the grid directly, and the DP oracle only shares the scoring rules.

use std::collections::BTreeSet;

use crate::align::{ProfitParams, Sequence, Transition, TransitionString};
use crate::error::{Error, Result};

/// Enumeration ceiling for [`brute_force_max`].
pub const BRUTE_FORCE_PATH_LIMIT: u128 = 10_000_000;

/// Result of an exhaustive search over canonical paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Best profit over all valid canonical paths.
    pub max_profit: u64,
    /// Every canonical path achieving `max_profit`.
    pub optimal_paths: BTreeSet<TransitionString>,
    /// Number of paths enumerated; equals [`count_paths`] of the instance.
    pub path_count_examined: u128,
}

/// Number of monotone grid paths from `(0, 0)` to `(m, n)` using the moves
/// right, down and diagonal (Delannoy numbers). Saturates on overflow.
pub fn count_paths(m: usize, n: usize) -> u128 {
    let mut prev = vec![1u128; n + 1];
    for _ in 1..=m {
        let mut row = vec![0u128; n + 1];
        row[0] = 1;
        for j in 1..=n {
            row[j] = row[j - 1]
                .saturating_add(prev[j])
                .saturating_add(prev[j - 1]);
        }
        prev = row;
    }
    prev[n]
}

/// Exhaustively enumerates every canonical path and scores it.
///
/// Refuses instances with more than [`BRUTE_FORCE_PATH_LIMIT`] paths. The
/// optimal set it returns can itself be large on heavily tied instances, so
/// keep inputs near the guard only when the ties are known to be sparse.
pub fn brute_force_max(s1: &Sequence, s2: &Sequence, p: ProfitParams) -> Result<OracleResult> {
    let total = count_paths(s1.len(), s2.len());
    if total > BRUTE_FORCE_PATH_LIMIT {
        return Err(Error::TooLarge(format!(
            "instance has {total} paths; brute force is limited to {BRUTE_FORCE_PATH_LIMIT}"
        )));
    }

    struct Walk<'a> {
        s1: &'a Sequence,
        s2: &'a Sequence,
        p: ProfitParams,
        best: u64,
        optimal: BTreeSet<TransitionString>,
        examined: u128,
        steps: Vec<Transition>,
    }

    impl Walk<'_> {
        fn go(&mut self, i: usize, j: usize, profit: u64) {
            if i == self.s1.len() && j == self.s2.len() {
                self.examined += 1;
                if self.optimal.is_empty() || profit > self.best {
                    self.best = profit;
                    self.optimal.clear();
                    self.optimal.insert(TransitionString::new(self.steps.clone()));
                } else if profit == self.best {
                    self.optimal.insert(TransitionString::new(self.steps.clone()));
                }
                return;
            }
            if i < self.s1.len() && j < self.s2.len() {
                let gain = if self.s1.get(i) == self.s2.get(j) {
                    self.p.x + self.p.z
                } else {
                    self.p.x + self.p.y
                };
                self.steps.push(Transition::Diagonal);
                self.go(i + 1, j + 1, profit + gain);
                self.steps.pop();
            }
            if i < self.s1.len() {
                self.steps.push(Transition::Horizontal);
                self.go(i + 1, j, profit + self.p.x);
                self.steps.pop();
            }
            if j < self.s2.len() {
                self.steps.push(Transition::Vertical);
                self.go(i, j + 1, profit + self.p.x);
                self.steps.pop();
            }
        }
    }

    let mut walk = Walk {
        s1,
        s2,
        p,
        best: 0,
        optimal: BTreeSet::new(),
        examined: 0,
        steps: Vec::new(),
    };
    walk.go(0, 0, 0);
    Ok(OracleResult {
        max_profit: walk.best,
        optimal_paths: walk.optimal,
        path_count_examined: walk.examined,
    })
}

/// Dynamic-programming maximizer.
///
/// Returns the optimal profit and one optimal canonical path. The table holds
/// suffix optima and the path is chosen by a forward walk from `(0, 0)`,
/// breaking ties in favor of Diagonal, then Horizontal, then Vertical.
pub fn dp_max(s1: &Sequence, s2: &Sequence, p: ProfitParams) -> (u64, TransitionString) {
    let (m, n) = (s1.len(), s2.len());
    // best[i][j] = optimal profit aligning s1[i..] with s2[j..].
    let mut best = vec![vec![0u64; n + 1]; m + 1];
    for i in (0..=m).rev() {
        for j in (0..=n).rev() {
            if i == m && j == n {
                continue;
            }
            let mut b = 0u64;
            if i < m && j < n {
                let gain = if s1.get(i) == s2.get(j) {
                    p.x + p.z
                } else {
                    p.x + p.y
                };
                b = b.max(gain + best[i + 1][j + 1]);
            }
            if i < m {
                b = b.max(p.x + best[i + 1][j]);
            }
            if j < n {
                b = b.max(p.x + best[i][j + 1]);
            }
            best[i][j] = b;
        }
    }

    let (mut i, mut j) = (0usize, 0usize);
    let mut steps = Vec::with_capacity(m.max(n));
    while i < m || j < n {
        let target = best[i][j];
        let diag_hits = i < m && j < n && {
            let gain = if s1.get(i) == s2.get(j) {
                p.x + p.z
            } else {
                p.x + p.y
            };
            gain + best[i + 1][j + 1] == target
        };
        if diag_hits {
            steps.push(Transition::Diagonal);
            i += 1;
            j += 1;
        } else if i < m && p.x + best[i + 1][j] == target {
            steps.push(Transition::Horizontal);
            i += 1;
        } else {
            steps.push(Transition::Vertical);
            j += 1;
        }
    }
    (best[0][0], TransitionString::new(steps))
}

/// Levenshtein distance with unit costs.
///
/// A sanity reference only: minimizing edits and maximizing profit are
/// different objectives, and their optimal alignments differ in general.
pub fn edit_distance(s1: &Sequence, s2: &Sequence) -> usize {
    let (m, n) = (s1.len(), s2.len());
    let mut prev: Vec<usize> = (0..=n).collect();
    for i in 1..=m {
        let mut row = vec![0usize; n + 1];
        row[0] = i;
        for j in 1..=n {
            let sub = prev[j - 1] + usize::from(s1.get(i - 1) != s2.get(j - 1));
            row[j] = sub.min(prev[j] + 1).min(row[j - 1] + 1);
        }
        prev = row;
    }
    prev[n]
}
