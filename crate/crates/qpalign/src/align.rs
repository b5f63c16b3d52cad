//! Core alignment model: sequences over `{A, C, G, T}`, the edit grid, and
//! transition strings describing monotone paths through it.
//!
//! A pairwise alignment of `s1` (length `m`) and `s2` (length `n`) is a
//! monotone path through the `(m+1) x (n+1)` grid from `(0, 0)` to `(m, n)`.
//! Each step is one of four transitions, encoded in two bits:
//!
//! | code | transition | meaning                                   |
//! |------|------------|-------------------------------------------|
//! | `00` | None       | padding, no movement                      |
//! | `01` | Vertical   | gap in `s1`, consumes one char of `s2`    |
//! | `10` | Horizontal | gap in `s2`, consumes one char of `s1`    |
//! | `11` | Diagonal   | consumes one char of each                 |
//!
//! Scoring rewards every step (profit maximization): an indel earns `x`, a
//! diagonal earns `x + z` on a character match and `x + y` on a mismatch.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// One nucleotide. The two-bit encoding is fixed: A=00, C=01, G=10, T=11.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Base {
    A = 0,
    C = 1,
    G = 2,
    T = 3,
}

impl Base {
    /// Two-bit code of this base.
    pub fn code(self) -> u8 {
        self as u8
    }

    /// Inverse of [`Base::code`]. Only the low two bits are considered.
    pub fn from_code(code: u8) -> Base {
        match code & 0b11 {
            0 => Base::A,
            1 => Base::C,
            2 => Base::G,
            _ => Base::T,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Base::A => 'A',
            Base::C => 'C',
            Base::G => 'G',
            Base::T => 'T',
        }
    }

    pub fn from_char(c: char) -> Option<Base> {
        match c.to_ascii_uppercase() {
            'A' => Some(Base::A),
            'C' => Some(Base::C),
            'G' => Some(Base::G),
            'T' => Some(Base::T),
            _ => None,
        }
    }
}

/// Two-bit encoding of a base (A=00, C=01, G=10, T=11).
pub fn encode_base(b: Base) -> u8 {
    b.code()
}

/// An immutable DNA sequence. Input is case-insensitive; bases are stored
/// in their canonical uppercase form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Sequence(Vec<Base>);

impl Sequence {
    pub fn new(bases: Vec<Base>) -> Sequence {
        Sequence(bases)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<Base> {
        self.0.get(i).copied()
    }

    pub fn bases(&self) -> &[Base] {
        &self.0
    }
}

impl FromStr for Sequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Sequence> {
        let mut bases = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match Base::from_char(c) {
                Some(b) => bases.push(b),
                // Positions are 1-based in diagnostics.
                None => {
                    return Err(Error::InvalidNucleotide {
                        found: c,
                        position: i + 1,
                    })
                }
            }
        }
        Ok(Sequence(bases))
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{}", b.to_char())?;
        }
        Ok(())
    }
}

/// One step of a path through the edit grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Transition {
    None = 0,
    Vertical = 1,
    Horizontal = 2,
    Diagonal = 3,
}

impl Transition {
    /// Two-bit code: bit 1 is the horizontal move, bit 0 the vertical move.
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Transition {
        match code & 0b11 {
            0 => Transition::None,
            1 => Transition::Vertical,
            2 => Transition::Horizontal,
            _ => Transition::Diagonal,
        }
    }

    /// Grid displacement `(dx, dy)`: x advances through `s1`, y through `s2`.
    pub fn moves(self) -> (u64, u64) {
        let c = self.code();
        (u64::from(c >> 1), u64::from(c & 1))
    }

    pub fn to_char(self) -> char {
        match self {
            Transition::None => 'N',
            Transition::Vertical => 'V',
            Transition::Horizontal => 'H',
            Transition::Diagonal => 'D',
        }
    }

    pub fn from_char(c: char) -> Option<Transition> {
        match c.to_ascii_uppercase() {
            'N' => Some(Transition::None),
            'V' => Some(Transition::Vertical),
            'H' => Some(Transition::Horizontal),
            'D' => Some(Transition::Diagonal),
            _ => None,
        }
    }
}

/// A fixed-length sequence of transitions: one candidate path.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TransitionString(Vec<Transition>);

impl TransitionString {
    pub fn new(steps: Vec<Transition>) -> TransitionString {
        TransitionString(steps)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn steps(&self) -> &[Transition] {
        &self.0
    }

    /// Drops `None` steps. Canonical paths describe the same alignment.
    pub fn canonical(&self) -> TransitionString {
        TransitionString(
            self.0
                .iter()
                .copied()
                .filter(|t| *t != Transition::None)
                .collect(),
        )
    }

    /// Pads with trailing `None` steps up to length `t`.
    pub fn padded(&self, t: usize) -> Result<TransitionString> {
        if self.0.len() > t {
            return Err(Error::Contract(format!(
                "cannot pad a {}-step path to {} steps",
                self.0.len(),
                t
            )));
        }
        let mut steps = self.0.clone();
        steps.resize(t, Transition::None);
        Ok(TransitionString(steps))
    }

    /// Packs the path into an integer: step `i` occupies bits `2i..2i+2`
    /// (step 0 in the least significant pair).
    pub fn code_bits(&self) -> u64 {
        let mut bits = 0u64;
        for (i, t) in self.0.iter().enumerate() {
            bits |= u64::from(t.code()) << (2 * i);
        }
        bits
    }

    /// Inverse of [`TransitionString::code_bits`] for a `t`-step path.
    pub fn from_code_bits(bits: u64, t: usize) -> TransitionString {
        let steps = (0..t)
            .map(|i| Transition::from_code(((bits >> (2 * i)) & 0b11) as u8))
            .collect();
        TransitionString(steps)
    }
}

impl FromStr for TransitionString {
    type Err = Error;

    fn from_str(s: &str) -> Result<TransitionString> {
        let mut steps = Vec::with_capacity(s.len());
        for (i, c) in s.chars().enumerate() {
            match Transition::from_char(c) {
                Some(t) => steps.push(t),
                None => {
                    return Err(Error::InvalidTransition {
                        found: c,
                        position: i + 1,
                    })
                }
            }
        }
        Ok(TransitionString(steps))
    }
}

impl fmt::Display for TransitionString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.0 {
            write!(f, "{}", t.to_char())?;
        }
        Ok(())
    }
}

/// Scoring parameters. All steps earn profit: `x` per indel, `x + y` per
/// mismatched diagonal, `x + z` per matched diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProfitParams {
    pub x: u64,
    pub y: u64,
    pub z: u64,
}

impl ProfitParams {
    /// Validated constructor. Requires `x >= 1`, `y >= 1`, `z > y`, and
    /// `z >= x` (the last keeps [`max_profit_bound`] a true upper bound,
    /// which the profit register width relies on).
    pub fn new(x: u64, y: u64, z: u64) -> Result<ProfitParams> {
        if x == 0 || y == 0 {
            return Err(Error::InvalidProfitParams(format!(
                "x and y must be positive (got x={x}, y={y})"
            )));
        }
        if z <= y {
            return Err(Error::InvalidProfitParams(format!(
                "z must exceed y so matches beat mismatches (got y={y}, z={z})"
            )));
        }
        if z < x {
            return Err(Error::InvalidProfitParams(format!(
                "z must be at least x so matches beat indel pairs (got x={x}, z={z})"
            )));
        }
        Ok(ProfitParams { x, y, z })
    }
}

impl Default for ProfitParams {
    fn default() -> ProfitParams {
        ProfitParams { x: 1, y: 1, z: 2 }
    }
}

/// The `(m+1) x (n+1)` edit grid for sequences of lengths `m` and `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridModel {
    pub m: usize,
    pub n: usize,
}

impl GridModel {
    pub fn new(m: usize, n: usize) -> GridModel {
        GridModel { m, n }
    }

    /// Number of grid nodes, `(m+1) * (n+1)`.
    pub fn node_count(&self) -> u128 {
        (self.m as u128 + 1) * (self.n as u128 + 1)
    }
}

/// Shortest and longest useful path lengths: `(max(m, n), m + n)`.
pub fn transition_bounds(m: usize, n: usize) -> (usize, usize) {
    (m.max(n), m + n)
}

/// Upper bound on the profit of any valid path:
/// `min(m, n) * (x + z) + |m - n| * x`.
pub fn max_profit_bound(m: usize, n: usize, p: ProfitParams) -> u64 {
    let short = m.min(n) as u64;
    let diff = m.abs_diff(n) as u64;
    short * (p.x + p.z) + diff * p.x
}

/// Profit earned by a single step.
///
/// `c1`/`c2` are the characters consumed from `s1`/`s2`; they are only
/// consulted for diagonal steps, where both must be present.
pub fn step_profit(
    t: Transition,
    c1: Option<Base>,
    c2: Option<Base>,
    p: ProfitParams,
) -> Result<u64> {
    match t {
        Transition::None => Ok(0),
        Transition::Horizontal | Transition::Vertical => Ok(p.x),
        Transition::Diagonal => match (c1, c2) {
            (Some(a), Some(b)) if a == b => Ok(p.x + p.z),
            (Some(_), Some(_)) => Ok(p.x + p.y),
            _ => Err(Error::Contract(
                "diagonal step requires a character from each sequence".into(),
            )),
        },
    }
}

/// Full bookkeeping for a path walked against a pair of sequences.
///
/// Counters advance for every step including those that run past the ends
/// of the sequences; profit accrues the base value of every move, and the
/// match bonus only where both consumed characters actually exist. This is
/// the exact classical mirror of the reversible profit circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathTrack {
    /// Number of horizontal moves taken (including diagonal contributions).
    pub h_count: u64,
    /// Number of vertical moves taken (including diagonal contributions).
    pub v_count: u64,
    /// Accumulated profit.
    pub profit: u64,
    /// True iff the walk ends exactly at `(m, n)` without overrunning.
    pub valid: bool,
}

/// Walks `path` against `(s1, s2)` and reports counters, profit and validity.
pub fn path_track(path: &TransitionString, s1: &Sequence, s2: &Sequence, p: ProfitParams) -> PathTrack {
    let (m, n) = (s1.len() as u64, s2.len() as u64);
    let (mut h, mut v) = (0u64, 0u64);
    let mut profit = 0u64;
    for &t in path.steps() {
        let (dx, dy) = t.moves();
        h += dx;
        v += dy;
        profit += match t {
            Transition::None => 0,
            Transition::Horizontal | Transition::Vertical => p.x,
            Transition::Diagonal => {
                // Both consumed characters must exist for the match bonus;
                // off-grid diagonals still earn the mismatch value.
                if h <= m && v <= n && s1.get(h as usize - 1) == s2.get(v as usize - 1) {
                    p.x + p.z
                } else {
                    p.x + p.y
                }
            }
        };
    }
    // Move counts only ever grow, so landing on (m, n) implies no prefix
    // ever overran either sequence.
    PathTrack {
        h_count: h,
        v_count: v,
        profit,
        valid: h == m && v == n,
    }
}

/// Profit and validity of a path. Invalid paths still report the profit
/// their moves accumulated.
pub fn path_profit(
    path: &TransitionString,
    s1: &Sequence,
    s2: &Sequence,
    p: ProfitParams,
) -> (u64, bool) {
    let track = path_track(path, s1, s2, p);
    (track.profit, track.valid)
}

/// A gapped alignment: two equal-length rows over `{A, C, G, T, _}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Alignment {
    pub top: String,
    pub bottom: String,
    pub profit: u64,
}

impl Alignment {
    /// Transition string of this alignment (no `None` steps).
    pub fn to_path(&self) -> Result<TransitionString> {
        let mut steps = Vec::new();
        for (a, b) in self.top.chars().zip(self.bottom.chars()) {
            let t = match (a, b) {
                ('_', '_') => {
                    return Err(Error::Contract("gap aligned against gap".into()));
                }
                (_, '_') => Transition::Horizontal,
                ('_', _) => Transition::Vertical,
                _ => Transition::Diagonal,
            };
            steps.push(t);
        }
        Ok(TransitionString::new(steps))
    }

    /// The ungapped input sequences `(s1, s2)` recovered from the rows.
    pub fn sequences(&self) -> Result<(Sequence, Sequence)> {
        let strip = |row: &str| -> Result<Sequence> {
            row.chars().filter(|c| *c != '_').collect::<String>().parse()
        };
        Ok((strip(&self.top)?, strip(&self.bottom)?))
    }
}

/// Expands a valid path into the gapped alignment it describes.
///
/// `None` steps are skipped. Fails if the path is not valid for `(s1, s2)`.
pub fn decode_alignment(
    path: &TransitionString,
    s1: &Sequence,
    s2: &Sequence,
    p: ProfitParams,
) -> Result<Alignment> {
    let track = path_track(path, s1, s2, p);
    if !track.valid {
        return Err(Error::InvalidPath(format!(
            "path {} walks to ({}, {}) instead of ({}, {})",
            path,
            track.h_count,
            track.v_count,
            s1.len(),
            s2.len()
        )));
    }
    let (mut i, mut j) = (0usize, 0usize);
    let mut top = String::new();
    let mut bottom = String::new();
    for &t in path.canonical().steps() {
        match t {
            Transition::None => unreachable!("canonical paths contain no None steps"),
            Transition::Horizontal => {
                top.push(s1.get(i).expect("valid path stays on the grid").to_char());
                bottom.push('_');
                i += 1;
            }
            Transition::Vertical => {
                top.push('_');
                bottom.push(s2.get(j).expect("valid path stays on the grid").to_char());
                j += 1;
            }
            Transition::Diagonal => {
                top.push(s1.get(i).expect("valid path stays on the grid").to_char());
                bottom.push(s2.get(j).expect("valid path stays on the grid").to_char());
                i += 1;
                j += 1;
            }
        }
    }
    Ok(Alignment {
        top,
        bottom,
        profit: track.profit,
    })
}
