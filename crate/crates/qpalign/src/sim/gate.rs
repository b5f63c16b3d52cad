//! The gate set: Hadamard, X (with any number of polarized controls),
//! controlled phase, and swap.
//!
//! Every gate may carry controls. A control is *positive* (fires on `|1⟩`)
//! or *negative* (fires on `|0⟩`); multiplexer-style circuits lean on
//! negative controls heavily, so they are first-class here rather than
//! X-conjugation sugar.

use crate::error::{Error, Result};

/// One control qubit with its polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    /// `true`: fires on `|1⟩`; `false`: fires on `|0⟩`.
    pub positive: bool,
}

impl Control {
    pub fn pos(qubit: usize) -> Control {
        Control {
            qubit,
            positive: true,
        }
    }

    pub fn neg(qubit: usize) -> Control {
        Control {
            qubit,
            positive: false,
        }
    }
}

/// Unitary applied to the target qubit(s) when all controls fire.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    /// Hadamard on one target.
    H,
    /// Bit flip on one target. With controls this is CX/MCX.
    X,
    /// Phase `e^{i angle}` applied when the target is `|1⟩` (and all
    /// controls fire). With no controls and angle π this is Z.
    CPhase { angle: f64 },
    /// Exchanges two targets.
    Swap,
}

/// A gate instance: kind, target qubit(s), controls.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn h(target: usize) -> Gate {
        Gate {
            kind: GateKind::H,
            targets: vec![target],
            controls: Vec::new(),
        }
    }

    pub fn x(target: usize) -> Gate {
        Gate {
            kind: GateKind::X,
            targets: vec![target],
            controls: Vec::new(),
        }
    }

    pub fn cx(control: usize, target: usize) -> Gate {
        Gate {
            kind: GateKind::X,
            targets: vec![target],
            controls: vec![Control::pos(control)],
        }
    }

    /// Multi-controlled X with explicit polarities.
    pub fn mcx(controls: Vec<Control>, target: usize) -> Gate {
        Gate {
            kind: GateKind::X,
            targets: vec![target],
            controls,
        }
    }

    pub fn cphase(angle: f64, target: usize, controls: Vec<Control>) -> Gate {
        Gate {
            kind: GateKind::CPhase { angle },
            targets: vec![target],
            controls,
        }
    }

    /// Z as an uncontrolled π phase.
    pub fn z(target: usize) -> Gate {
        Gate::cphase(std::f64::consts::PI, target, Vec::new())
    }

    pub fn swap(a: usize, b: usize) -> Gate {
        Gate {
            kind: GateKind::Swap,
            targets: vec![a, b],
            controls: Vec::new(),
        }
    }

    /// Formal inverse: self for H/X/Swap, negated angle for CPhase.
    pub fn inverse(&self) -> Gate {
        let kind = match self.kind {
            GateKind::CPhase { angle } => GateKind::CPhase { angle: -angle },
            k => k,
        };
        Gate {
            kind,
            targets: self.targets.clone(),
            controls: self.controls.clone(),
        }
    }

    /// `(positive_mask, negative_mask)` over the control qubits.
    pub fn control_masks(&self) -> (u64, u64) {
        let mut pos = 0u64;
        let mut neg = 0u64;
        for c in &self.controls {
            let m = 1u64 << c.qubit;
            if c.positive {
                pos |= m;
            } else {
                neg |= m;
            }
        }
        (pos, neg)
    }

    /// Checks shape and that every index fits inside `n` qubits.
    pub fn validate(&self, n: usize) -> Result<()> {
        let expected_targets = match self.kind {
            GateKind::Swap => 2,
            _ => 1,
        };
        if self.targets.len() != expected_targets {
            return Err(Error::Simulation(format!(
                "{:?} expects {} target(s), got {}",
                self.kind,
                expected_targets,
                self.targets.len()
            )));
        }
        if self.kind == GateKind::Swap && self.targets[0] == self.targets[1] {
            return Err(Error::Simulation("swap targets must differ".into()));
        }
        for &t in &self.targets {
            if t >= n {
                return Err(Error::Simulation(format!(
                    "target qubit {t} out of range for {n}-qubit state"
                )));
            }
        }
        let mut seen = 0u64;
        for c in &self.controls {
            if c.qubit >= n {
                return Err(Error::Simulation(format!(
                    "control qubit {} out of range for {n}-qubit state",
                    c.qubit
                )));
            }
            if self.targets.contains(&c.qubit) {
                return Err(Error::Simulation(format!(
                    "qubit {} is both control and target",
                    c.qubit
                )));
            }
            let m = 1u64 << c.qubit;
            if seen & m != 0 {
                return Err(Error::Simulation(format!(
                    "duplicate control qubit {}",
                    c.qubit
                )));
            }
            seen |= m;
        }
        Ok(())
    }
}
