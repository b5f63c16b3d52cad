//! Dense statevector backend: one complex amplitude per basis state.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::sim::gate::{Gate, GateKind};

/// Hard cap on dense width: 2^26 amplitudes is a 1 GiB allocation.
pub const DENSE_MAX_QUBITS: usize = 26;

#[derive(Debug, Clone)]
pub struct DenseState {
    n: usize,
    amps: Vec<Complex64>,
}

/// Visits every index `x` in `0..2^n` with `x & fixed_mask == fixed_val`,
/// in ascending order. The carry trick advances in O(1) per index.
#[inline]
fn for_each_fixed(n: usize, fixed_mask: u64, fixed_val: u64, mut f: impl FnMut(usize)) {
    debug_assert_eq!(fixed_val & !fixed_mask, 0);
    let limit = 1u64 << n;
    if fixed_val >= limit {
        return;
    }
    let mut x = fixed_val;
    loop {
        f(x as usize);
        let carry = (x | fixed_mask) + 1;
        if carry >= limit {
            break;
        }
        x = (carry & !fixed_mask) | fixed_val;
    }
}

impl DenseState {
    /// `|0...0⟩` on `n` qubits.
    pub fn zero(n: usize) -> Result<DenseState> {
        if n > DENSE_MAX_QUBITS {
            return Err(Error::TooLarge(format!(
                "dense backend supports at most {DENSE_MAX_QUBITS} qubits, asked for {n}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(DenseState { n, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitude(&self, idx: u64) -> Complex64 {
        self.amps.get(idx as usize).copied().unwrap_or_default()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n)?;
        let (pos, neg) = gate.control_masks();
        let ctrl_mask = pos | neg;
        match gate.kind {
            GateKind::H => {
                let t = 1u64 << gate.targets[0];
                for_each_fixed(self.n, ctrl_mask | t, pos, |i| {
                    let j = i | t as usize;
                    let a = self.amps[i];
                    let b = self.amps[j];
                    self.amps[i] = (a + b) * FRAC_1_SQRT_2;
                    self.amps[j] = (a - b) * FRAC_1_SQRT_2;
                });
            }
            GateKind::X => {
                let t = 1u64 << gate.targets[0];
                for_each_fixed(self.n, ctrl_mask | t, pos, |i| {
                    self.amps.swap(i, i | t as usize);
                });
            }
            GateKind::CPhase { angle } => {
                let t = 1u64 << gate.targets[0];
                let phase = Complex64::from_polar(1.0, angle);
                for_each_fixed(self.n, ctrl_mask | t, pos | t, |i| {
                    self.amps[i] *= phase;
                });
            }
            GateKind::Swap => {
                let a = 1u64 << gate.targets[0];
                let b = 1u64 << gate.targets[1];
                // Visit indices with bit a set and bit b clear; their images
                // under the swap are the only ones that change.
                for_each_fixed(self.n, ctrl_mask | a | b, pos | a, |i| {
                    let j = (i & !(a as usize)) | b as usize;
                    self.amps.swap(i, j);
                });
            }
        }
        Ok(())
    }

    /// Iterates `(index, amplitude)` over exactly-nonzero entries.
    pub fn nonzero(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm_sqr() > 0.0)
            .map(|(i, a)| (i as u64, *a))
    }

    /// Probability mass on basis states satisfying `pred`.
    pub fn probability_where(&self, mut pred: impl FnMut(u64) -> bool) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| pred(*i as u64))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Marginal distribution of a register, outcomes in ascending order.
    pub fn marginal(&self, offset: usize, width: usize) -> Vec<f64> {
        let mut marg = vec![0.0f64; 1usize << width];
        let mask = if width == 0 { 0 } else { (1usize << width) - 1 };
        for (i, a) in self.amps.iter().enumerate() {
            marg[(i >> offset) & mask] += a.norm_sqr();
        }
        marg
    }

    /// Projects onto `register == outcome` and rescales by `1/sqrt(p)`.
    pub fn collapse(&mut self, offset: usize, width: usize, outcome: u64, p: f64) {
        let mask = if width == 0 { 0 } else { (1u64 << width) - 1 };
        let scale = 1.0 / p.sqrt();
        for (i, a) in self.amps.iter_mut().enumerate() {
            if ((i as u64) >> offset) & mask == outcome {
                *a *= scale;
            } else {
                *a = Complex64::new(0.0, 0.0);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subcube_enumeration_visits_exactly_the_fixed_slice() {
        let mut seen = Vec::new();
        for_each_fixed(4, 0b0101, 0b0100, |i| seen.push(i));
        assert_eq!(seen, vec![0b0100, 0b0110, 0b1100, 0b1110]);

        let mut all = Vec::new();
        for_each_fixed(3, 0, 0, |i| all.push(i));
        assert_eq!(all, (0..8).collect::<Vec<_>>());

        let mut one = Vec::new();
        for_each_fixed(0, 0, 0, |i| one.push(i));
        assert_eq!(one, vec![0]);
    }

    #[test]
    fn width_guard_applies() {
        assert!(DenseState::zero(DENSE_MAX_QUBITS + 1).is_err());
    }
}
