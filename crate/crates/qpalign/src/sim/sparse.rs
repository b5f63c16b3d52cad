//! Sparse backend: a sorted map from basis index to amplitude, holding only
//! entries whose magnitude exceeds the pruning threshold.

use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::sim::gate::{Gate, GateKind};

/// Amplitudes with magnitude at or below this are dropped.
pub const SPARSE_PRUNE_THRESHOLD: f64 = 1e-14;

const PRUNE_NORM_SQR: f64 = SPARSE_PRUNE_THRESHOLD * SPARSE_PRUNE_THRESHOLD;

/// Widest sparse state: basis indices must fit a `u64` with room for
/// `1 << n` arithmetic.
pub const SPARSE_MAX_QUBITS: usize = 63;

#[derive(Debug, Clone)]
pub struct SparseState {
    n: usize,
    /// Sorted by basis index; no duplicate indices; all entries above the
    /// pruning threshold.
    amps: Vec<(u64, Complex64)>,
}

impl SparseState {
    /// `|0...0⟩` on `n` qubits.
    pub fn zero(n: usize) -> Result<SparseState> {
        if n > SPARSE_MAX_QUBITS {
            return Err(Error::TooLarge(format!(
                "sparse backend supports at most {SPARSE_MAX_QUBITS} qubits, asked for {n}"
            )));
        }
        Ok(SparseState {
            n,
            amps: vec![(0, Complex64::new(1.0, 0.0))],
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    /// Number of stored (nonzero) amplitudes.
    pub fn support_len(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitude(&self, idx: u64) -> Complex64 {
        match self.amps.binary_search_by_key(&idx, |e| e.0) {
            Ok(i) => self.amps[i].1,
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|(_, a)| a.norm_sqr()).sum()
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n)?;
        let (pos, neg) = gate.control_masks();
        let fires = |k: u64| k & pos == pos && k & neg == 0;
        match gate.kind {
            GateKind::H => {
                let t = 1u64 << gate.targets[0];
                let mut out: Vec<(u64, Complex64)> = Vec::with_capacity(self.amps.len() * 2);
                for &(k, a) in &self.amps {
                    if fires(k) {
                        let ac = a * FRAC_1_SQRT_2;
                        if k & t == 0 {
                            out.push((k, ac));
                            out.push((k | t, ac));
                        } else {
                            out.push((k & !t, ac));
                            out.push((k, -ac));
                        }
                    } else {
                        out.push((k, a));
                    }
                }
                out.sort_by_key(|e| e.0);
                let mut combined: Vec<(u64, Complex64)> = Vec::with_capacity(out.len());
                for (k, a) in out {
                    match combined.last_mut() {
                        Some(last) if last.0 == k => last.1 += a,
                        _ => combined.push((k, a)),
                    }
                }
                combined.retain(|(_, a)| a.norm_sqr() > PRUNE_NORM_SQR);
                self.amps = combined;
            }
            GateKind::X => {
                let t = 1u64 << gate.targets[0];
                self.permute(|k| if fires(k) { k ^ t } else { k });
            }
            GateKind::Swap => {
                let a = 1u64 << gate.targets[0];
                let b = 1u64 << gate.targets[1];
                self.permute(|k| {
                    let bits_differ = (k & a == 0) != (k & b == 0);
                    if fires(k) && bits_differ {
                        k ^ (a | b)
                    } else {
                        k
                    }
                });
            }
            GateKind::CPhase { angle } => {
                let t = 1u64 << gate.targets[0];
                let phase = Complex64::from_polar(1.0, angle);
                for e in &mut self.amps {
                    if e.0 & t != 0 && fires(e.0) {
                        e.1 *= phase;
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies a bijective key map and restores sort order.
    fn permute(&mut self, map: impl Fn(u64) -> u64) {
        for e in &mut self.amps {
            e.0 = map(e.0);
        }
        self.amps.sort_by_key(|e| e.0);
    }

    /// Stored `(index, amplitude)` entries in ascending index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.amps.iter().copied()
    }

    /// Probability mass on basis states satisfying `pred`.
    pub fn probability_where(&self, mut pred: impl FnMut(u64) -> bool) -> f64 {
        self.amps
            .iter()
            .filter(|(k, _)| pred(*k))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Marginal distribution of a register as an ordered outcome map.
    pub fn marginal(&self, offset: usize, width: usize) -> BTreeMap<u64, f64> {
        let mask = if width == 0 { 0 } else { (1u64 << width) - 1 };
        let mut marg = BTreeMap::new();
        for (k, a) in &self.amps {
            *marg.entry((k >> offset) & mask).or_insert(0.0) += a.norm_sqr();
        }
        marg
    }

    /// Projects onto `register == outcome` and rescales by `1/sqrt(p)`.
    pub fn collapse(&mut self, offset: usize, width: usize, outcome: u64, p: f64) {
        let mask = if width == 0 { 0 } else { (1u64 << width) - 1 };
        let scale = 1.0 / p.sqrt();
        self.amps.retain(|(k, _)| (k >> offset) & mask == outcome);
        for e in &mut self.amps {
            e.1 *= scale;
        }
    }
}
