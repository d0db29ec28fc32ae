//! The three exact constructions and their gate-count formulas.

use super::{Circuit, Gate, Literal, Wire};
use crate::{Error, Result};
use num_bigint::BigInt;

/// Gate budget for the DNF builder; `(n-k+1) * 2^k` explodes past this.
pub const DEFAULT_GATE_BUDGET: u64 = 1 << 26;

/// Exact size of [`build_threshold_depth2`]: `2n - 2k + 3`.
pub fn threshold_depth2_size(n: usize, k: usize) -> u64 {
    2 * (n as u64 - k as u64) + 3
}

/// Exact size of [`build_dnf`]: `(n - k + 1) * 2^k + 1`.
pub fn dnf_size(n: usize, k: usize) -> u64 {
    (n as u64 - k as u64 + 1) * (1u64 << k) + 1
}

/// Exact size of [`build_depth3`]: `(n - k + 1) * (2k + 1) + 1`.
pub fn depth3_size(n: usize, k: usize) -> u64 {
    (n as u64 - k as u64 + 1) * (2 * k as u64 + 1) + 1
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k < 1 || k > n {
        return Err(Error::InvalidInput(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    Ok(())
}

/// Depth-2 threshold circuit of size exactly `2n - 2k + 3`.
///
/// First layer: for each shift `i`, a GEQ gate `g_i` (window at least `y`, as
/// binary numbers with the first bit least significant) and a gate `l_i`
/// (window at most `y`). Output fires iff `sum(g_i + l_i) >= n - k + 2`: for
/// every shift at least one of the pair is 1, and both are 1 exactly on window
/// equality.
pub fn build_threshold_depth2(n: usize, k: usize) -> Result<Circuit> {
    check_nk(n, k)?;
    let shifts = n - k + 1;
    let mut gates = Vec::with_capacity(2 * shifts + 1);
    for i in 0..shifts {
        for sign in [1i8, -1i8] {
            let mut inputs = Vec::with_capacity(2 * k);
            let mut weights = Vec::with_capacity(2 * k);
            for t in 0..k {
                inputs.push(Wire::Literal(Literal::pos(i + t)));
                let w = BigInt::from(sign) << t;
                weights.push(w);
            }
            for t in 0..k {
                inputs.push(Wire::Literal(Literal::pos(n + t)));
                let w = BigInt::from(-sign) << t;
                weights.push(w);
            }
            gates.push(Gate::ltf(inputs, weights, BigInt::from(0)));
        }
    }
    let inputs: Vec<Wire> = (0..gates.len()).map(Wire::Gate).collect();
    let weights = vec![BigInt::from(1); inputs.len()];
    gates.push(Gate::ltf(inputs, weights, BigInt::from(shifts as u64 + 1)));
    Circuit::new(n, k, gates)
}

/// DNF of size exactly `(n - k + 1) * 2^k + 1`: one width-`2k` clause per
/// (shift, window value) pair, fixing the window and the pattern jointly.
pub fn build_dnf(n: usize, k: usize) -> Result<Circuit> {
    build_dnf_with_budget(n, k, DEFAULT_GATE_BUDGET)
}

pub fn build_dnf_with_budget(n: usize, k: usize, budget: u64) -> Result<Circuit> {
    check_nk(n, k)?;
    if k >= 63 || dnf_size(n, k) > budget {
        return Err(Error::Capacity(format!(
            "DNF for n={n} k={k} needs {} gates, over the budget of {budget}",
            if k >= 63 { u64::MAX } else { dnf_size(n, k) },
        )));
    }
    let shifts = n - k + 1;
    let mut gates = Vec::with_capacity(shifts * (1usize << k) + 1);
    for i in 0..shifts {
        for a in 0..(1u64 << k) {
            let mut clause = Vec::with_capacity(2 * k);
            for t in 0..k {
                let bit = (a >> t) & 1 == 1;
                clause.push(Wire::Literal(Literal { input_index: i + t, negated: !bit }));
            }
            for t in 0..k {
                let bit = (a >> t) & 1 == 1;
                clause.push(Wire::Literal(Literal { input_index: n + t, negated: !bit }));
            }
            gates.push(Gate::and(clause));
        }
    }
    let clauses: Vec<Wire> = (0..gates.len()).map(Wire::Gate).collect();
    gates.push(Gate::or(clauses));
    Circuit::new(n, k, gates)
}

/// Depth-3 DeMorgan circuit of size exactly `(n - k + 1) * (2k + 1) + 1`.
///
/// Per shift `i`: the CNF equality over the window, built from width-2 clauses
/// `(x_{i+t} or not y_t)` and `(not x_{i+t} or y_t)` feeding one AND; a top OR
/// ranges over the shifts.
pub fn build_depth3(n: usize, k: usize) -> Result<Circuit> {
    check_nk(n, k)?;
    let shifts = n - k + 1;
    let mut gates = Vec::with_capacity(shifts * (2 * k + 1) + 1);
    let mut eq_gates = Vec::with_capacity(shifts);
    for i in 0..shifts {
        let mut clause_refs = Vec::with_capacity(2 * k);
        for t in 0..k {
            gates.push(Gate::or(vec![
                Wire::Literal(Literal::pos(i + t)),
                Wire::Literal(Literal::neg(n + t)),
            ]));
            clause_refs.push(Wire::Gate(gates.len() - 1));
            gates.push(Gate::or(vec![
                Wire::Literal(Literal::neg(i + t)),
                Wire::Literal(Literal::pos(n + t)),
            ]));
            clause_refs.push(Wire::Gate(gates.len() - 1));
        }
        gates.push(Gate::and(clause_refs));
        eq_gates.push(Wire::Gate(gates.len() - 1));
    }
    gates.push(Gate::or(eq_gates));
    Circuit::new(n, k, gates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::GateKind;
    use crate::core::{sm_packed, Pattern, Text};

    #[test]
    fn sizes_and_depths_pinned() {
        let c = build_threshold_depth2(8, 3).unwrap();
        assert_eq!(c.size(), 13);
        assert_eq!(c.depth(), 2);

        // n = k collapses to equality via two comparisons plus the output gate.
        let c = build_threshold_depth2(5, 5).unwrap();
        assert_eq!(c.size(), 3);

        let c = build_dnf(6, 2).unwrap();
        assert_eq!(c.size(), 21);
        assert_eq!(c.depth(), 2);

        let c = build_depth3(6, 2).unwrap();
        assert_eq!(c.size(), 26);
        assert_eq!(c.depth(), 3);
    }

    #[test]
    fn size_formulas_match_built_circuits() {
        for n in 1..=14usize {
            for k in 1..=n {
                assert_eq!(build_threshold_depth2(n, k).unwrap().size() as u64, threshold_depth2_size(n, k));
                assert_eq!(build_depth3(n, k).unwrap().size() as u64, depth3_size(n, k));
                if dnf_size(n, k) <= 1 << 16 {
                    assert_eq!(build_dnf(n, k).unwrap().size() as u64, dnf_size(n, k));
                }
            }
        }
        // Equality DNF: k = n gives 2^n + 1 gates.
        assert_eq!(build_dnf(10, 10).unwrap().size() as u64, (1 << 10) + 1);
    }

    #[test]
    fn budget_refusal() {
        assert!(matches!(build_dnf(30, 30), Err(Error::Capacity(_))));
        assert!(matches!(build_dnf_with_budget(10, 4, 10), Err(Error::Capacity(_))));
    }

    #[test]
    fn geq_pair_tautology_and_equality() {
        // For every shift, g_i or l_i holds, and both hold iff window equality.
        for k in 1..=12usize {
            let n = k;
            let c = build_threshold_depth2(n, k).unwrap();
            let gates = c.gates();
            assert_eq!(gates[0].kind, GateKind::Ltf);
            for x in 0..(1u64 << n) {
                for y in 0..(1u64 << k) {
                    let xt = Text::from_bits(x, n);
                    let yt = Pattern::from_bits(y, k);
                    let mut assignment: Vec<bool> = Vec::new();
                    assignment.extend(xt.symbols().iter().map(|&s| s == 1));
                    assignment.extend(yt.symbols().iter().map(|&s| s == 1));
                    let sub_g = Circuit::new(n, k, vec![gates[0].clone()]).unwrap();
                    let sub_l = Circuit::new(n, k, vec![gates[1].clone()]).unwrap();
                    let g = sub_g.eval_assignment(&assignment);
                    let l = sub_l.eval_assignment(&assignment);
                    assert!(g || l);
                    assert_eq!(g && l, x == y);
                }
            }
        }
    }

    #[test]
    fn constructions_match_oracle_on_small_grid() {
        let mut scratch = Vec::new();
        for n in 1..=8usize {
            for k in 1..=n {
                let circuits = vec![
                    build_threshold_depth2(n, k).unwrap(),
                    build_dnf(n, k).unwrap(),
                    build_depth3(n, k).unwrap(),
                ];
                let compiled: Vec<_> = circuits.iter().map(|c| c.compile()).collect();
                for x in 0..(1u64 << n) {
                    for y in 0..(1u64 << k) {
                        let expected = sm_packed(x, n, y, k);
                        for c in &compiled {
                            assert_eq!(c.eval_packed(x, y, &mut scratch), expected, "n={n} k={k} x={x:b} y={y:b}");
                        }
                    }
                }
            }
        }
    }
}
