//! Gate-DAG circuit model over the `n + k` input bits of `SM(x, y)`, the exact
//! constructions (depth-2 threshold, DNF, depth-3 DeMorgan), the sparse-function
//! dup-encoding reduction, and equivalence checking against the oracle.
//!
//! Size counts gates excluding inputs. Input index `i < n` is `x_i`; index
//! `n + t` is `y_t`. LTF gates carry arbitrary-precision weights; evaluation is
//! exact for any weight magnitude.

mod build;
mod sparse;
mod text_format;
mod verify;

pub use build::{
    build_depth3, build_dnf, build_dnf_with_budget, build_threshold_depth2, depth3_size, dnf_size,
    threshold_depth2_size, DEFAULT_GATE_BUDGET,
};
pub use sparse::{dup, dup_odd, sparse_encode, verify_sparse_reduction, SparseFunction};
pub use verify::{verify_equivalence, EquivalenceReport, EquivMode};

use crate::core::{Pattern, Text};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// A possibly negated reference to one of the `n + k` input bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Literal {
    pub input_index: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(input_index: usize) -> Self {
        Self { input_index, negated: false }
    }

    pub fn neg(input_index: usize) -> Self {
        Self { input_index, negated: true }
    }
}

/// A gate input: either an input literal or the output of an earlier gate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wire {
    Literal(Literal),
    Gate(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    And,
    Or,
    Not,
    Ltf,
}

impl GateKind {
    fn name(self) -> &'static str {
        match self {
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Not => "NOT",
            GateKind::Ltf => "LTF",
        }
    }
}

/// One gate. For `Ltf`, `weights` aligns with `inputs` and the gate fires iff
/// the weighted sum is at least `threshold`; other kinds ignore both fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub kind: GateKind,
    pub inputs: Vec<Wire>,
    pub weights: Vec<BigInt>,
    pub threshold: BigInt,
}

impl Gate {
    pub fn and(inputs: Vec<Wire>) -> Self {
        Self { kind: GateKind::And, inputs, weights: Vec::new(), threshold: BigInt::zero() }
    }

    pub fn or(inputs: Vec<Wire>) -> Self {
        Self { kind: GateKind::Or, inputs, weights: Vec::new(), threshold: BigInt::zero() }
    }

    pub fn not(input: Wire) -> Self {
        Self { kind: GateKind::Not, inputs: vec![input], weights: Vec::new(), threshold: BigInt::zero() }
    }

    pub fn ltf(inputs: Vec<Wire>, weights: Vec<BigInt>, threshold: BigInt) -> Self {
        Self { kind: GateKind::Ltf, inputs, weights, threshold }
    }
}

/// An acyclic circuit over the inputs of `SM` for texts of length `n` and
/// patterns of length `k`. Gates are topologically ordered; gate inputs may
/// only reference earlier gates. The output gate is always the last one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    k: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize, k: usize, gates: Vec<Gate>) -> Result<Self> {
        if gates.is_empty() {
            return Err(Error::InvalidInput("a circuit needs at least one gate".into()));
        }
        for (idx, gate) in gates.iter().enumerate() {
            for wire in &gate.inputs {
                match *wire {
                    Wire::Literal(lit) => {
                        if lit.input_index >= n + k {
                            return Err(Error::InvalidInput(format!(
                                "gate {idx} references input {} outside [0, {})",
                                lit.input_index,
                                n + k
                            )));
                        }
                    }
                    Wire::Gate(g) => {
                        if g >= idx {
                            return Err(Error::InvalidInput(format!(
                                "gate {idx} references gate {g}; gates may only reference earlier gates"
                            )));
                        }
                    }
                }
            }
            match gate.kind {
                GateKind::Not => {
                    if gate.inputs.len() != 1 {
                        return Err(Error::InvalidInput(format!(
                            "NOT gate {idx} must have exactly one input"
                        )));
                    }
                }
                GateKind::Ltf
                    if gate.weights.len() != gate.inputs.len() => {
                        return Err(Error::InvalidInput(format!(
                            "LTF gate {idx} has {} weights for {} inputs",
                            gate.weights.len(),
                            gate.inputs.len()
                        )));
                    }
                _ => {}
            }
        }
        Ok(Self { n, k, gates })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.gates.len() - 1
    }

    /// Number of gates, excluding inputs.
    pub fn size(&self) -> usize {
        self.gates.len()
    }

    /// Gate layers on the longest input-to-output path; inputs count as depth 0.
    pub fn depth(&self) -> usize {
        let mut depth = vec![0usize; self.gates.len()];
        for (idx, gate) in self.gates.iter().enumerate() {
            let below = gate
                .inputs
                .iter()
                .map(|w| match *w {
                    Wire::Literal(_) => 0,
                    Wire::Gate(g) => depth[g],
                })
                .max()
                .unwrap_or(0);
            depth[idx] = below + 1;
        }
        depth[self.output()]
    }

    /// Evaluate on `(x, y)`. Empty conjunctions are true and empty disjunctions
    /// false; LTF sums use exact big-integer arithmetic.
    pub fn eval(&self, x: &Text, y: &Pattern) -> Result<bool> {
        if x.alphabet_size() != 2 || y.alphabet_size() != 2 {
            return Err(Error::InvalidInput("circuits evaluate over the binary alphabet".into()));
        }
        if x.len() != self.n || y.len() != self.k {
            return Err(Error::InvalidInput(format!(
                "circuit expects |x| = {} and |y| = {}, got {} and {}",
                self.n,
                self.k,
                x.len(),
                y.len()
            )));
        }
        let mut assignment = Vec::with_capacity(self.n + self.k);
        assignment.extend(x.symbols().iter().map(|&s| s == 1));
        assignment.extend(y.symbols().iter().map(|&s| s == 1));
        Ok(self.eval_assignment(&assignment))
    }

    /// Evaluate on a full assignment of the `n + k` inputs.
    pub fn eval_assignment(&self, assignment: &[bool]) -> bool {
        assert_eq!(assignment.len(), self.n + self.k);
        let mut values = vec![false; self.gates.len()];
        for (idx, gate) in self.gates.iter().enumerate() {
            let wire_value = |w: &Wire| match *w {
                Wire::Literal(lit) => assignment[lit.input_index] != lit.negated,
                Wire::Gate(g) => values[g],
            };
            values[idx] = match gate.kind {
                GateKind::And => gate.inputs.iter().all(&wire_value),
                GateKind::Or => gate.inputs.iter().any(&wire_value),
                GateKind::Not => !wire_value(&gate.inputs[0]),
                GateKind::Ltf => {
                    let mut sum = BigInt::zero();
                    for (w, weight) in gate.inputs.iter().zip(&gate.weights) {
                        if wire_value(w) {
                            sum += weight;
                        }
                    }
                    sum >= gate.threshold
                }
            };
        }
        values[self.output()]
    }

    /// Flatten into a form with an `i128` fast path for LTF gates; used by the
    /// exhaustive equivalence sweeps where per-input allocation would dominate.
    pub fn compile(&self) -> CompiledCircuit {
        let gates = self
            .gates
            .iter()
            .map(|gate| {
                let wires: Vec<Wire> = gate.inputs.clone();
                match gate.kind {
                    GateKind::Ltf => {
                        let small: Option<Vec<i64>> =
                            gate.weights.iter().map(|w| i64::try_from(w).ok()).collect();
                        match (small, i128::try_from(&gate.threshold).ok()) {
                            (Some(weights), Some(threshold)) => {
                                CompiledGate::LtfFast { wires, weights, threshold }
                            }
                            _ => CompiledGate::LtfBig {
                                wires,
                                weights: gate.weights.clone(),
                                threshold: gate.threshold.clone(),
                            },
                        }
                    }
                    kind => CompiledGate::Logic { kind, wires },
                }
            })
            .collect();
        CompiledCircuit { n: self.n, k: self.k, gates }
    }

    pub fn serialize(&self) -> String {
        text_format::serialize(self)
    }

    pub fn deserialize(text: &str) -> Result<Circuit> {
        text_format::deserialize(text)
    }
}

enum CompiledGate {
    Logic { kind: GateKind, wires: Vec<Wire> },
    LtfFast { wires: Vec<Wire>, weights: Vec<i64>, threshold: i128 },
    LtfBig { wires: Vec<Wire>, weights: Vec<BigInt>, threshold: BigInt },
}

/// Allocation-free evaluator over bit-packed inputs (`n + k <= 64`).
pub struct CompiledCircuit {
    n: usize,
    k: usize,
    gates: Vec<CompiledGate>,
}

impl CompiledCircuit {
    /// Evaluate on packed inputs: bit `i` of `x` is `x_i`, bit `t` of `y` is `y_t`.
    /// `scratch` is reused across calls.
    pub fn eval_packed(&self, x: u64, y: u64, scratch: &mut Vec<bool>) -> bool {
        debug_assert!(self.n + self.k <= 64);
        let assignment = x | (y << self.n);
        scratch.clear();
        scratch.resize(self.gates.len(), false);
        for idx in 0..self.gates.len() {
            let value = {
                let wire_value = |w: &Wire, values: &[bool]| match *w {
                    Wire::Literal(lit) => ((assignment >> lit.input_index) & 1 == 1) != lit.negated,
                    Wire::Gate(g) => values[g],
                };
                match &self.gates[idx] {
                    CompiledGate::Logic { kind: GateKind::And, wires } => {
                        wires.iter().all(|w| wire_value(w, scratch))
                    }
                    CompiledGate::Logic { kind: GateKind::Or, wires } => {
                        wires.iter().any(|w| wire_value(w, scratch))
                    }
                    CompiledGate::Logic { kind: GateKind::Not, wires } => !wire_value(&wires[0], scratch),
                    CompiledGate::Logic { kind: GateKind::Ltf, .. } => unreachable!(),
                    CompiledGate::LtfFast { wires, weights, threshold } => {
                        let mut sum: i128 = 0;
                        for (w, &weight) in wires.iter().zip(weights) {
                            if wire_value(w, scratch) {
                                sum += i128::from(weight);
                            }
                        }
                        sum >= *threshold
                    }
                    CompiledGate::LtfBig { wires, weights, threshold } => {
                        let mut sum = BigInt::zero();
                        for (w, weight) in wires.iter().zip(weights) {
                            if wire_value(w, scratch) {
                                sum += weight;
                            }
                        }
                        sum >= *threshold
                    }
                }
            };
            scratch[idx] = value;
        }
        scratch[self.gates.len() - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn empty_gate_conventions() {
        let c = Circuit::new(1, 1, vec![Gate::and(vec![])]).unwrap();
        assert!(c.eval_assignment(&[false, false]));
        let c = Circuit::new(1, 1, vec![Gate::or(vec![])]).unwrap();
        assert!(!c.eval_assignment(&[true, true]));
    }

    #[test]
    fn single_geq_gate_on_equal_windows() {
        // GEQ comparing x[0..k] with y as binary numbers, bit 0 least significant.
        let k = 70usize; // weights up to 2^69: exercises the big-integer path
        let mut inputs = Vec::new();
        let mut weights = Vec::new();
        for t in 0..k {
            inputs.push(Wire::Literal(Literal::pos(t)));
            weights.push(BigInt::from(1u8) << t);
        }
        for t in 0..k {
            inputs.push(Wire::Literal(Literal::pos(k + t)));
            weights.push(-(BigInt::from(1u8) << t));
        }
        let c = Circuit::new(k, k, vec![Gate::ltf(inputs, weights, BigInt::from(0))]).unwrap();
        let mut assignment = vec![false; 2 * k];
        assignment[3] = true;
        assignment[k + 3] = true;
        assignment[69] = true;
        assignment[k + 69] = true;
        assert!(c.eval_assignment(&assignment)); // equal values
        assignment[k + 69] = false;
        assert!(c.eval_assignment(&assignment)); // x strictly greater
        assignment[k + 69] = true;
        assignment[69] = false;
        assert!(!c.eval_assignment(&assignment)); // x strictly smaller
    }

    #[test]
    fn structural_validation() {
        assert!(Circuit::new(1, 1, vec![]).is_err());
        // Forward reference is rejected.
        let bad = Circuit::new(1, 1, vec![Gate::or(vec![Wire::Gate(0)])]);
        assert!(bad.is_err());
        // Literal out of range.
        let bad = Circuit::new(1, 1, vec![Gate::or(vec![Wire::Literal(Literal::pos(2))])]);
        assert!(bad.is_err());
        // NOT arity.
        let bad = Circuit::new(1, 1, vec![Gate { kind: GateKind::Not, inputs: vec![], weights: vec![], threshold: BigInt::zero() }]);
        assert!(bad.is_err());
    }

    #[test]
    fn compiled_matches_interpreted() {
        let c = build::build_threshold_depth2(6, 3).unwrap();
        let compiled = c.compile();
        let mut scratch = Vec::new();
        for x in 0..(1u64 << 6) {
            for y in 0..(1u64 << 3) {
                let xt = crate::core::Text::from_bits(x, 6);
                let yt = crate::core::Pattern::from_bits(y, 3);
                assert_eq!(
                    compiled.eval_packed(x, y, &mut scratch),
                    c.eval(&xt, &yt).unwrap()
                );
            }
        }
    }
}
