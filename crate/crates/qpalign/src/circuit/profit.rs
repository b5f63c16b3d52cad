//! The reversible alignment-scoring pipeline: a branch register spanning
//! every transition string of length `t`, move counters, a profit
//! accumulator, per-step character lookups with in-range markers, and a
//! final validity comparison.

use crate::align::{
    max_profit_bound, path_track, transition_bounds, GridModel, ProfitParams, Sequence,
    TransitionString,
};
use crate::circuit::adder::{emit_add_const, emit_increment};
use crate::circuit::qram::emit_table_lookup;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::sim::gate::{Control, Gate};
use crate::sim::layout::{Register, RegisterLayout};

/// Number of qubits needed to hold every value in `0..=max`.
pub fn width_for_max(max: u64) -> usize {
    if max == 0 {
        0
    } else {
        64 - max.leading_zeros() as usize
    }
}

/// How character scratch registers are allocated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharMode {
    /// One shared pair of character registers, loaded and uncomputed inside
    /// every step. Cheapest in qubits.
    Reuse,
    /// A private character/marker block per step, left computed. More
    /// qubits, fewer gates per step.
    PerStep,
}

impl std::str::FromStr for CharMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<CharMode> {
        match s {
            "reuse" => Ok(CharMode::Reuse),
            "per-step" => Ok(CharMode::PerStep),
            other => Err(Error::Contract(format!(
                "unknown character mode '{other}' (expected 'reuse' or 'per-step')"
            ))),
        }
    }
}

impl CharMode {
    pub fn name(self) -> &'static str {
        match self {
            CharMode::Reuse => "reuse",
            CharMode::PerStep => "per-step",
        }
    }
}

/// Register plan and circuit builders for scoring one `(s1, s2)` pair.
///
/// Register order: the branch (`step`) register first, then both counters,
/// the profit accumulator, character scratch, the validity bit, and finally
/// the search ancillas when requested. Step `i` of the branch register uses
/// bit `2i` for the vertical move and bit `2i+1` for the horizontal move, so
/// the pair read as a 2-bit value is exactly the transition code.
#[derive(Debug, Clone)]
pub struct AlignmentPipeline {
    s1: Sequence,
    s2: Sequence,
    params: ProfitParams,
    char_mode: CharMode,
    t: usize,
    layout: RegisterLayout,
    step: Register,
    counter_h: Register,
    counter_v: Register,
    profit: Register,
    char_h: Vec<Register>,
    char_v: Vec<Register>,
    hit_h: Vec<Register>,
    hit_v: Vec<Register>,
    valid: Register,
    borrow: Option<Register>,
    flag: Option<Register>,
}

impl AlignmentPipeline {
    pub fn new(
        s1: Sequence,
        s2: Sequence,
        params: ProfitParams,
        char_mode: CharMode,
        with_search_ancillas: bool,
    ) -> Result<AlignmentPipeline> {
        let (m, n) = (s1.len(), s2.len());
        let (_, t) = transition_bounds(m, n);
        let counter_width = width_for_max(t as u64);
        let profit_width = width_for_max(max_profit_bound(m, n, params));

        let mut layout = RegisterLayout::new();
        let step = layout.push("step", 2 * t)?;
        let counter_h = layout.push("counter_h", counter_width)?;
        let counter_v = layout.push("counter_v", counter_width)?;
        let profit = layout.push("profit", profit_width)?;
        let (mut char_h, mut char_v) = (Vec::new(), Vec::new());
        let (mut hit_h, mut hit_v) = (Vec::new(), Vec::new());
        match char_mode {
            CharMode::Reuse => {
                char_h.push(layout.push("char_h", 2)?);
                char_v.push(layout.push("char_v", 2)?);
                hit_h.push(layout.push("hit_h", 1)?);
                hit_v.push(layout.push("hit_v", 1)?);
            }
            CharMode::PerStep => {
                for i in 0..t {
                    char_h.push(layout.push(&format!("char_h{i}"), 2)?);
                    char_v.push(layout.push(&format!("char_v{i}"), 2)?);
                    hit_h.push(layout.push(&format!("hit_h{i}"), 1)?);
                    hit_v.push(layout.push(&format!("hit_v{i}"), 1)?);
                }
            }
        }
        let valid = layout.push("valid", 1)?;
        let (mut borrow, mut flag) = (None, None);
        if with_search_ancillas {
            borrow = Some(layout.push("borrow", 1)?);
            flag = Some(layout.push("flag", 1)?);
        }
        Ok(AlignmentPipeline {
            s1,
            s2,
            params,
            char_mode,
            t,
            layout,
            step,
            counter_h,
            counter_v,
            profit,
            char_h,
            char_v,
            hit_h,
            hit_v,
            valid,
            borrow,
            flag,
        })
    }

    pub fn grid(&self) -> GridModel {
        GridModel::new(self.s1.len(), self.s2.len())
    }

    pub fn sequences(&self) -> (&Sequence, &Sequence) {
        (&self.s1, &self.s2)
    }

    pub fn params(&self) -> ProfitParams {
        self.params
    }

    pub fn char_mode(&self) -> CharMode {
        self.char_mode
    }

    /// Number of transition steps (`m + n`).
    pub fn steps(&self) -> usize {
        self.t
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn total_qubits(&self) -> usize {
        self.layout.total_qubits()
    }

    pub fn step_register(&self) -> Register {
        self.step
    }

    pub fn counter_registers(&self) -> (Register, Register) {
        (self.counter_h, self.counter_v)
    }

    pub fn profit_register(&self) -> Register {
        self.profit
    }

    pub fn valid_register(&self) -> Register {
        self.valid
    }

    pub fn borrow_register(&self) -> Option<Register> {
        self.borrow
    }

    pub fn flag_register(&self) -> Option<Register> {
        self.flag
    }

    /// Largest profit any valid path can earn.
    pub fn profit_bound(&self) -> u64 {
        max_profit_bound(self.s1.len(), self.s2.len(), self.params)
    }

    fn step_scratch(&self, i: usize) -> (Register, Register, Register, Register) {
        let k = match self.char_mode {
            CharMode::Reuse => 0,
            CharMode::PerStep => i,
        };
        (self.char_h[k], self.char_v[k], self.hit_h[k], self.hit_v[k])
    }

    /// (vertical-move qubit, horizontal-move qubit) of step `i`.
    pub fn step_qubits(&self, i: usize) -> (usize, usize) {
        (self.step.qubit(2 * i), self.step.qubit(2 * i + 1))
    }

    fn emit_step(&self, c: &mut Circuit, i: usize) -> Result<()> {
        let (vq, hq) = self.step_qubits(i);
        let h_ctrl = [Control::pos(hq)];
        let v_ctrl = [Control::pos(vq)];
        let diag_ctrl = [Control::pos(hq), Control::pos(vq)];
        let counter_h: Vec<usize> = self.counter_h.qubits().collect();
        let counter_v: Vec<usize> = self.counter_v.qubits().collect();
        let profit: Vec<usize> = self.profit.qubits().collect();

        // Advance the move counters for this step's horizontal/vertical
        // components (a diagonal advances both).
        emit_increment(c, &counter_h, &h_ctrl)?;
        emit_increment(c, &counter_v, &v_ctrl)?;

        // Base profit: x per moved axis, adjusted to x + y on diagonals.
        let p = self.params;
        emit_add_const(c, &profit, p.x, &h_ctrl)?;
        emit_add_const(c, &profit, p.x, &v_ctrl)?;
        if p.y != p.x && self.profit.width > 0 {
            let modulus = 1u128 << self.profit.width;
            let adjust = (p.y as i128 - p.x as i128).rem_euclid(modulus as i128) as u64;
            emit_add_const(c, &profit, adjust, &diag_ctrl)?;
        }

        // Load the characters addressed by the updated counters. Addresses
        // past either sequence load nothing and leave the hit markers clear.
        let (char_h, char_v, hit_h, hit_v) = self.step_scratch(i);
        emit_table_lookup(c, &self.s1, self.counter_h, char_h, Some(hit_h.qubit(0)), &[])?;
        emit_table_lookup(c, &self.s2, self.counter_v, char_v, Some(hit_v.qubit(0)), &[])?;

        // XOR the characters so char_v == 0 exactly on equal codes, award
        // the match bonus on diagonal steps where both characters exist,
        // then restore char_v.
        let xor = [
            Gate::cx(char_h.qubit(0), char_v.qubit(0)),
            Gate::cx(char_h.qubit(1), char_v.qubit(1)),
        ];
        c.extend(xor.clone())?;
        let bonus_ctrl = vec![
            Control::pos(hq),
            Control::pos(vq),
            Control::neg(char_v.qubit(0)),
            Control::neg(char_v.qubit(1)),
            Control::pos(hit_h.qubit(0)),
            Control::pos(hit_v.qubit(0)),
        ];
        emit_add_const(c, &profit, p.z - p.y, &bonus_ctrl)?;
        c.extend(xor)?;

        if self.char_mode == CharMode::Reuse {
            // Return the shared scratch to |0⟩ for the next step: the
            // lookups are self-inverse and the counters have not moved
            // since the load.
            emit_table_lookup(c, &self.s2, self.counter_v, char_v, Some(hit_v.qubit(0)), &[])?;
            emit_table_lookup(c, &self.s1, self.counter_h, char_h, Some(hit_h.qubit(0)), &[])?;
        }
        Ok(())
    }

    /// Flips `valid` exactly when the counters read `(m, n)`: counter bits
    /// that should be 1 are inverted, an all-negative multi-controlled NOT
    /// fires on the all-zero pattern, and the inversions are undone.
    fn emit_validity(&self, c: &mut Circuit) -> Result<()> {
        let (m, n) = (self.s1.len() as u64, self.s2.len() as u64);
        let mut flips = Vec::new();
        let mut controls = Vec::new();
        for (reg, want) in [(self.counter_h, m), (self.counter_v, n)] {
            for bit in 0..reg.width {
                let q = reg.qubit(bit);
                if want >> bit & 1 == 1 {
                    flips.push(Gate::x(q));
                }
                controls.push(Control::neg(q));
            }
        }
        c.extend(flips.clone())?;
        c.push(Gate::mcx(controls, self.valid.qubit(0)))?;
        c.extend(flips)?;
        Ok(())
    }

    /// The scoring chain: every step body followed by the validity check.
    /// The branch register is only ever used as a control here, so the chain
    /// is diagonal in the branch basis.
    pub fn chain_circuit(&self) -> Result<Circuit> {
        let mut c = Circuit::new(self.total_qubits());
        for i in 0..self.t {
            self.emit_step(&mut c, i)?;
        }
        self.emit_validity(&mut c)?;
        Ok(c)
    }

    /// Hadamards on the branch register: the uniform superposition over all
    /// `4^t` transition strings.
    pub fn prepare_circuit(&self) -> Result<Circuit> {
        let mut c = Circuit::new(self.total_qubits());
        for q in self.step.qubits() {
            c.push(Gate::h(q))?;
        }
        Ok(c)
    }

    /// Branch preparation followed by the full scoring chain.
    pub fn full_circuit(&self) -> Result<Circuit> {
        let mut c = self.prepare_circuit()?;
        c.append(&self.chain_circuit()?)?;
        Ok(c)
    }

    /// The register values the chain must produce for one specific branch,
    /// as `(register name, value)` pairs covering the whole layout.
    ///
    /// `path` must already have length `t`. Profit is reduced modulo the
    /// accumulator capacity, which loses nothing for valid paths: their
    /// profit never exceeds [`Self::profit_bound`].
    pub fn expected_register_values(
        &self,
        path: &TransitionString,
    ) -> Result<Vec<(String, u64)>> {
        if path.len() != self.t {
            return Err(Error::Contract(format!(
                "expected a padded path of length {}, got {}",
                self.t,
                path.len()
            )));
        }
        let track = path_track(path, &self.s1, &self.s2, self.params);
        let mut values: Vec<(String, u64)> = vec![
            ("step".into(), path.code_bits()),
            ("counter_h".into(), track.h_count),
            ("counter_v".into(), track.v_count),
            ("profit".into(), track.profit & self.profit.mask()),
            ("valid".into(), track.valid as u64),
        ];
        match self.char_mode {
            CharMode::Reuse => {
                values.push(("char_h".into(), 0));
                values.push(("char_v".into(), 0));
                values.push(("hit_h".into(), 0));
                values.push(("hit_v".into(), 0));
            }
            CharMode::PerStep => {
                // Replay the walk to capture each step's loaded characters.
                let (mut h, mut v) = (0usize, 0usize);
                for (i, &step) in path.steps().iter().enumerate() {
                    let (dx, dy) = step.moves();
                    h += dx as usize;
                    v += dy as usize;
                    let a = self.s1.get(h.wrapping_sub(1));
                    let b = self.s2.get(v.wrapping_sub(1));
                    values.push((format!("char_h{i}"), a.map_or(0, |x| x.code() as u64)));
                    values.push((format!("char_v{i}"), b.map_or(0, |x| x.code() as u64)));
                    values.push((format!("hit_h{i}"), a.is_some() as u64));
                    values.push((format!("hit_v{i}"), b.is_some() as u64));
                }
            }
        }
        if self.borrow.is_some() {
            values.push(("borrow".into(), 0));
            values.push(("flag".into(), 0));
        }
        Ok(values)
    }

    /// Full basis index the chain must map branch `path` to.
    pub fn expected_basis_index(&self, path: &TransitionString) -> Result<u64> {
        let values = self.expected_register_values(path)?;
        let pairs: Vec<(&str, u64)> = values.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        self.layout.pack(&pairs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::state::{BackendKind, QuantumState};

    fn pipeline(s1: &str, s2: &str, mode: CharMode) -> AlignmentPipeline {
        AlignmentPipeline::new(
            s1.parse().unwrap(),
            s2.parse().unwrap(),
            ProfitParams::default(),
            mode,
            false,
        )
        .unwrap()
    }

    fn run_branch(p: &AlignmentPipeline, path: &str) -> QuantumState {
        let path: TransitionString = path.parse().unwrap();
        let mut s = QuantumState::zero(BackendKind::Sparse, p.total_qubits()).unwrap();
        let bits = path.code_bits();
        for q in 0..p.step_register().width {
            if bits >> q & 1 == 1 {
                s.apply(&Gate::x(p.step_register().qubit(q))).unwrap();
            }
        }
        p.chain_circuit().unwrap().run(&mut s).unwrap();
        s
    }

    #[test]
    fn single_diagonal_step_scores_a_match() {
        // ("A", "A"), branch "DN": profit x+z = 3, counters (1,1), but the
        // walk is only valid once both characters are consumed — "DN" ends
        // at (1,1) so it is valid.
        let p = pipeline("A", "A", CharMode::Reuse);
        let s = run_branch(&p, "DN");
        let want = p
            .expected_basis_index(&"DN".parse().unwrap())
            .unwrap();
        s.expect_basis(want, 1e-9).unwrap();
        // Decode the expectation to make the frozen values explicit.
        let values = p
            .expected_register_values(&"DN".parse().unwrap())
            .unwrap();
        let get = |k: &str| values.iter().find(|(n, _)| n == k).unwrap().1;
        assert_eq!(get("counter_h"), 1);
        assert_eq!(get("counter_v"), 1);
        assert_eq!(get("profit"), 3);
        assert_eq!(get("valid"), 1);
    }

    #[test]
    fn off_grid_diagonals_score_as_mismatches() {
        // ("A", "A") branch "DD": second diagonal runs past both sequences,
        // so it earns x+y = 2 with no bonus; total 5, invalid. The profit
        // accumulator is sized for valid paths (bound 3, two bits), so this
        // invalid branch wraps to 5 mod 4 = 1 — which is fine, because the
        // search only ever acts on branches with the valid bit set.
        let p = pipeline("A", "A", CharMode::Reuse);
        let s = run_branch(&p, "DD");
        let path: TransitionString = "DD".parse().unwrap();
        s.expect_basis(p.expected_basis_index(&path).unwrap(), 1e-9)
            .unwrap();
        let (s1, s2) = p.sequences();
        let track = path_track(&path, s1, s2, p.params());
        assert_eq!((track.profit, track.valid), (5, false));
        let values = p.expected_register_values(&path).unwrap();
        let get = |k: &str| values.iter().find(|(n, _)| n == k).unwrap().1;
        assert_eq!(p.profit_register().width, 2);
        assert_eq!(get("profit"), 5 % 4);
        assert_eq!(get("valid"), 0);
    }

    #[test]
    fn every_branch_matches_the_classical_track_for_a_1_1_instance() {
        for mode in [CharMode::Reuse, CharMode::PerStep] {
            let p = pipeline("A", "C", mode);
            let chain = p.chain_circuit().unwrap();
            for bits in 0..16u64 {
                let path = TransitionString::from_code_bits(bits, 2);
                let mut s =
                    QuantumState::zero(BackendKind::Sparse, p.total_qubits()).unwrap();
                for q in 0..4 {
                    if bits >> q & 1 == 1 {
                        s.apply(&Gate::x(p.step_register().qubit(q))).unwrap();
                    }
                }
                chain.run(&mut s).unwrap();
                let want = p.expected_basis_index(&path).unwrap();
                s.expect_basis(want, 1e-9)
                    .unwrap_or_else(|e| panic!("{mode:?} branch {bits:04b}: {e}"));
            }
        }
    }

    #[test]
    fn superposed_chain_is_the_sum_of_basis_branches() {
        // Running the chain on the uniform branch superposition must put
        // amplitude 1/4 on each branch's expected full index.
        let p = pipeline("A", "A", CharMode::Reuse);
        let mut s = QuantumState::zero(BackendKind::Sparse, p.total_qubits()).unwrap();
        p.full_circuit().unwrap().run(&mut s).unwrap();
        for bits in 0..16u64 {
            let path = TransitionString::from_code_bits(bits, 2);
            let idx = p.expected_basis_index(&path).unwrap();
            let amp = s.amplitude(idx);
            assert!(
                (amp.re - 0.25).abs() < 1e-9 && amp.im.abs() < 1e-9,
                "branch {bits:04b}: {amp}"
            );
        }
    }

    #[test]
    fn empty_by_nonempty_instance_counts_and_validates() {
        // ("", "AC"): only vertical moves can be valid; profit 2x = 2.
        let p = pipeline("", "AC", CharMode::Reuse);
        let path: TransitionString = "VV".parse().unwrap();
        let s = run_branch(&p, "VV");
        s.expect_basis(p.expected_basis_index(&path).unwrap(), 1e-9)
            .unwrap();
        let values = p.expected_register_values(&path).unwrap();
        let get = |k: &str| values.iter().find(|(n, _)| n == k).unwrap().1;
        assert_eq!(get("profit"), 2);
        assert_eq!(get("valid"), 1);
    }

    #[test]
    fn empty_by_empty_instance_is_trivially_valid() {
        let p = pipeline("", "", CharMode::Reuse);
        assert_eq!(p.steps(), 0);
        let path = TransitionString::new(vec![]);
        let mut s = QuantumState::zero(BackendKind::Sparse, p.total_qubits()).unwrap();
        p.chain_circuit().unwrap().run(&mut s).unwrap();
        s.expect_basis(p.expected_basis_index(&path).unwrap(), 1e-12)
            .unwrap();
        let values = p.expected_register_values(&path).unwrap();
        assert!(values.iter().any(|(k, v)| k == "valid" && *v == 1));
    }

    #[test]
    fn per_step_scratch_holds_the_loaded_characters() {
        let p = pipeline("AT", "T", CharMode::PerStep);
        // Branch "HDN": step 0 loads s1[1]='A', step 1 loads s1[2]='T' and
        // s2[1]='T' (a match: profit x + x+z = 4), step 2 idles.
        let path: TransitionString = "HDN".parse().unwrap();
        let s = run_branch(&p, "HDN");
        s.expect_basis(p.expected_basis_index(&path).unwrap(), 1e-9)
            .unwrap();
        let values = p.expected_register_values(&path).unwrap();
        let get = |k: &str| values.iter().find(|(n, _)| n == k).unwrap().1;
        assert_eq!(get("char_h0"), 0); // 'A'
        assert_eq!(get("hit_h0"), 1);
        assert_eq!(get("char_v0"), 0);
        assert_eq!(get("hit_v0"), 0); // nothing consumed from s2 yet
        assert_eq!(get("char_h1"), 3); // 'T'
        assert_eq!(get("char_v1"), 3); // 'T'
        assert_eq!(get("profit"), 4);
        assert_eq!(get("valid"), 1);
    }

    #[test]
    fn alternate_params_with_x_above_y_stay_consistent() {
        // x=2, y=1, z=3: the diagonal adjustment constant is negative and
        // must wrap correctly through the modular accumulator.
        let params = ProfitParams::new(2, 1, 3).unwrap();
        let p = AlignmentPipeline::new(
            "AG".parse().unwrap(),
            "G".parse().unwrap(),
            params,
            CharMode::Reuse,
            false,
        )
        .unwrap();
        let chain = p.chain_circuit().unwrap();
        for bits in 0..64u64 {
            let path = TransitionString::from_code_bits(bits, 3);
            let mut s = QuantumState::zero(BackendKind::Sparse, p.total_qubits()).unwrap();
            for q in 0..6 {
                if bits >> q & 1 == 1 {
                    s.apply(&Gate::x(p.step_register().qubit(q))).unwrap();
                }
            }
            chain.run(&mut s).unwrap();
            let want = p.expected_basis_index(&path).unwrap();
            s.expect_basis(want, 1e-9)
                .unwrap_or_else(|e| panic!("branch {bits:06b}: {e}"));
        }
    }
}
