//! Named register layouts over a flat qubit line.
//!
//! Registers are disjoint, contiguous spans handed out in declaration order
//! starting at qubit 0. Within a register qubit 0 of the span is the least
//! significant bit; printed bitstrings put the most significant bit on the
//! left.

use crate::error::{Error, Result};

/// A handle to one register: its base qubit and width. Zero-width registers
/// are legal (they always read as value 0 and own no qubits).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Register {
    pub offset: usize,
    pub width: usize,
}

impl Register {
    /// Bit mask of the register within a basis index.
    pub fn mask(&self) -> u64 {
        if self.width == 0 {
            0
        } else {
            ((1u128 << self.width) - 1) as u64
        }
    }

    /// Value this register holds inside basis index `idx`.
    pub fn value(&self, idx: u64) -> u64 {
        (idx >> self.offset) & self.mask()
    }

    /// Global indices of this register's qubits, least significant first.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.offset..self.offset + self.width
    }

    /// Global index of bit `bit` of this register.
    pub fn qubit(&self, bit: usize) -> usize {
        debug_assert!(bit < self.width);
        self.offset + bit
    }
}

/// An ordered collection of named registers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RegisterLayout {
    names: Vec<String>,
    regs: Vec<Register>,
    total: usize,
}

impl RegisterLayout {
    pub fn new() -> RegisterLayout {
        RegisterLayout::default()
    }

    /// Appends a register. Names must be unique; the total width may not
    /// exceed 63 qubits (basis indices are packed into a `u64`).
    pub fn push(&mut self, name: &str, width: usize) -> Result<Register> {
        if self.names.iter().any(|n| n == name) {
            return Err(Error::Contract(format!("duplicate register name {name:?}")));
        }
        if self.total + width > 63 {
            return Err(Error::TooLarge(format!(
                "layout would need {} qubits; at most 63 are addressable",
                self.total + width
            )));
        }
        let reg = Register {
            offset: self.total,
            width,
        };
        self.names.push(name.to_string());
        self.regs.push(reg);
        self.total += width;
        Ok(reg)
    }

    pub fn total_qubits(&self) -> usize {
        self.total
    }

    pub fn register(&self, name: &str) -> Option<Register> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| self.regs[i])
    }

    /// `(name, register)` pairs in declaration order.
    pub fn registers(&self) -> impl Iterator<Item = (&str, Register)> + '_ {
        self.names
            .iter()
            .map(String::as_str)
            .zip(self.regs.iter().copied())
    }

    /// Builds a basis index from named register values. Registers left out
    /// hold 0. Values must fit their registers.
    pub fn pack(&self, values: &[(&str, u64)]) -> Result<u64> {
        let mut idx = 0u64;
        for &(name, v) in values {
            let reg = self
                .register(name)
                .ok_or_else(|| Error::Contract(format!("unknown register {name:?}")))?;
            if v & !reg.mask() != 0 {
                return Err(Error::Contract(format!(
                    "value {v} does not fit {}-bit register {name:?}",
                    reg.width
                )));
            }
            idx |= v << reg.offset;
        }
        Ok(idx)
    }
}

/// Renders `value` as a `width`-bit string, most significant bit first.
pub fn bitstring(value: u64, width: usize) -> String {
    (0..width)
        .rev()
        .map(|b| if (value >> b) & 1 == 1 { '1' } else { '0' })
        .collect()
}
