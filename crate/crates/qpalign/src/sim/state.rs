//! Backend-agnostic state handle: dense and sparse simulators behind one
//! interface, including register measurement with shared sampling order so
//! both backends produce identical measurement transcripts for the same seed.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::sim::dense::DenseState;
use crate::sim::gate::Gate;
use crate::sim::layout::Register;
use crate::sim::rng::Prng;
use crate::sim::sparse::SparseState;

/// Which statevector representation to simulate with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendKind {
    Dense,
    Sparse,
}

impl BackendKind {
    pub fn name(self) -> &'static str {
        match self {
            BackendKind::Dense => "dense",
            BackendKind::Sparse => "sparse",
        }
    }
}

impl std::str::FromStr for BackendKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<BackendKind> {
        match s {
            "dense" => Ok(BackendKind::Dense),
            "sparse" => Ok(BackendKind::Sparse),
            other => Err(Error::Contract(format!(
                "unknown backend '{other}' (expected 'dense' or 'sparse')"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub enum QuantumState {
    Dense(DenseState),
    Sparse(SparseState),
}

impl QuantumState {
    /// `|0...0⟩` on `n` qubits in the chosen backend.
    pub fn zero(backend: BackendKind, n: usize) -> Result<QuantumState> {
        Ok(match backend {
            BackendKind::Dense => QuantumState::Dense(DenseState::zero(n)?),
            BackendKind::Sparse => QuantumState::Sparse(SparseState::zero(n)?),
        })
    }

    pub fn backend(&self) -> BackendKind {
        match self {
            QuantumState::Dense(_) => BackendKind::Dense,
            QuantumState::Sparse(_) => BackendKind::Sparse,
        }
    }

    pub fn num_qubits(&self) -> usize {
        match self {
            QuantumState::Dense(s) => s.num_qubits(),
            QuantumState::Sparse(s) => s.num_qubits(),
        }
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        match self {
            QuantumState::Dense(s) => s.apply(gate),
            QuantumState::Sparse(s) => s.apply(gate),
        }
    }

    pub fn run_gates<'a>(&mut self, gates: impl IntoIterator<Item = &'a Gate>) -> Result<()> {
        for g in gates {
            self.apply(g)?;
        }
        debug_assert!(
            (self.norm_sqr() - 1.0).abs() < 1e-9,
            "state norm drifted: {}",
            self.norm_sqr()
        );
        Ok(())
    }

    pub fn amplitude(&self, idx: u64) -> Complex64 {
        match self {
            QuantumState::Dense(s) => s.amplitude(idx),
            QuantumState::Sparse(s) => s.amplitude(idx),
        }
    }

    pub fn norm_sqr(&self) -> f64 {
        match self {
            QuantumState::Dense(s) => s.norm_sqr(),
            QuantumState::Sparse(s) => s.norm_sqr(),
        }
    }

    /// `(index, amplitude)` pairs above the sparse pruning threshold, in
    /// ascending index order regardless of backend.
    pub fn nonzero(&self) -> Vec<(u64, Complex64)> {
        match self {
            QuantumState::Dense(s) => s.nonzero().collect(),
            QuantumState::Sparse(s) => s.nonzero().collect(),
        }
    }

    /// Probability mass on basis states satisfying `pred`.
    pub fn probability_where(&self, pred: impl FnMut(u64) -> bool) -> f64 {
        match self {
            QuantumState::Dense(s) => s.probability_where(pred),
            QuantumState::Sparse(s) => s.probability_where(pred),
        }
    }

    /// Asserts the state is exactly the basis state `idx` (up to tolerance)
    /// and returns the residual max deviation.
    pub fn expect_basis(&self, idx: u64, tol: f64) -> Result<f64> {
        let mut worst = (self.amplitude(idx) - Complex64::new(1.0, 0.0)).norm();
        for (k, a) in self.nonzero() {
            if k != idx {
                worst = worst.max(a.norm());
            }
        }
        if worst > tol {
            return Err(Error::Simulation(format!(
                "state is not |{idx}⟩: max amplitude deviation {worst:.3e} exceeds {tol:.1e}"
            )));
        }
        Ok(worst)
    }

    /// Measures `reg` in the computational basis, collapsing the state.
    ///
    /// Outcomes are sampled by walking the register's marginal distribution
    /// in ascending outcome order against a single uniform draw, so both
    /// backends consume the RNG identically and yield the same transcript.
    pub fn measure_register(&mut self, reg: Register, rng: &mut Prng) -> Result<u64> {
        let u = rng.next_f64();
        match self {
            QuantumState::Dense(s) => {
                let marg = s.marginal(reg.offset, reg.width);
                let total: f64 = marg.iter().sum();
                if total <= 0.0 {
                    return Err(Error::ZeroNormProjection);
                }
                let mut acc = 0.0;
                let mut chosen = marg.len() - 1;
                for (outcome, &p) in marg.iter().enumerate() {
                    acc += p;
                    if u * total < acc {
                        chosen = outcome;
                        break;
                    }
                }
                // Skip to the last outcome with nonzero mass if the walk fell
                // off the end through rounding.
                while marg[chosen] <= 0.0 {
                    chosen -= 1;
                }
                let p = marg[chosen] / total;
                s.collapse(reg.offset, reg.width, chosen as u64, marg[chosen]);
                debug_assert!(p > 0.0);
                Ok(chosen as u64)
            }
            QuantumState::Sparse(s) => {
                let marg = s.marginal(reg.offset, reg.width);
                let total: f64 = marg.values().sum();
                if total <= 0.0 {
                    return Err(Error::ZeroNormProjection);
                }
                let mut acc = 0.0;
                let mut chosen = None;
                for (&outcome, &p) in &marg {
                    acc += p;
                    if u * total < acc {
                        chosen = Some((outcome, p));
                        break;
                    }
                }
                let (outcome, p) = chosen.unwrap_or_else(|| {
                    let (&k, &p) = marg.iter().next_back().expect("nonempty marginal");
                    (k, p)
                });
                s.collapse(reg.offset, reg.width, outcome, p);
                Ok(outcome)
            }
        }
    }
}

/// Largest absolute amplitude difference between two states over the union of
/// their supports.
pub fn max_amplitude_delta(a: &QuantumState, b: &QuantumState) -> f64 {
    let mut worst = 0.0f64;
    for (k, amp) in a.nonzero() {
        worst = worst.max((amp - b.amplitude(k)).norm());
    }
    for (k, amp) in b.nonzero() {
        worst = worst.max((amp - a.amplitude(k)).norm());
    }
    worst
}
