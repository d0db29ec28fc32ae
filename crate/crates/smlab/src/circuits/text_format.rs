//! Line-oriented circuit serialization.
//!
//! Header: `n k size depth`. One gate per line: `idx KIND inputs...` with
//! `[weights... threshold]` appended for LTF gates. Input tokens are `i3` /
//! `!i3` for literals and `g5` for gate references; the output is the last
//! gate. Round-trips losslessly.

use super::{Circuit, Gate, GateKind, Literal, Wire};
use crate::{Error, Result};
use num_bigint::BigInt;
use std::fmt::Write as _;
use std::str::FromStr;

pub(super) fn serialize(c: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "{} {} {} {}", c.n(), c.k(), c.size(), c.depth()).unwrap();
    for (idx, gate) in c.gates().iter().enumerate() {
        write!(out, "{idx} {}", gate.kind.name()).unwrap();
        for wire in &gate.inputs {
            match *wire {
                Wire::Literal(lit) => {
                    write!(out, " {}i{}", if lit.negated { "!" } else { "" }, lit.input_index).unwrap()
                }
                Wire::Gate(g) => write!(out, " g{g}").unwrap(),
            }
        }
        if gate.kind == GateKind::Ltf {
            for w in &gate.weights {
                write!(out, " {w}").unwrap();
            }
            write!(out, " {}", gate.threshold).unwrap();
        }
        out.push('\n');
    }
    out
}

fn parse_wire(token: &str, line: usize) -> Result<Wire> {
    let bad = || Error::InvalidInput(format!("line {line}: malformed wire token {token:?}"));
    let (negated, rest) = match token.strip_prefix('!') {
        Some(rest) => (true, rest),
        None => (false, token),
    };
    if let Some(idx) = rest.strip_prefix('i') {
        let input_index = idx.parse().map_err(|_| bad())?;
        return Ok(Wire::Literal(Literal { input_index, negated }));
    }
    if negated {
        return Err(bad());
    }
    if let Some(idx) = rest.strip_prefix('g') {
        return Ok(Wire::Gate(idx.parse().map_err(|_| bad())?));
    }
    Err(bad())
}

pub(super) fn deserialize(text: &str) -> Result<Circuit> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("empty circuit file".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 4 {
        return Err(Error::InvalidInput("header must be `n k size depth`".into()));
    }
    let n: usize = parts[0].parse().map_err(|_| Error::InvalidInput("bad n in header".into()))?;
    let k: usize = parts[1].parse().map_err(|_| Error::InvalidInput("bad k in header".into()))?;
    let size: usize = parts[2].parse().map_err(|_| Error::InvalidInput("bad size in header".into()))?;
    let depth: usize = parts[3].parse().map_err(|_| Error::InvalidInput("bad depth in header".into()))?;

    let mut gates = Vec::with_capacity(size);
    for (lineno, line) in lines {
        let mut tokens = line.split_whitespace();
        let idx: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::InvalidInput(format!("line {}: missing gate index", lineno + 1)))?;
        if idx != gates.len() {
            return Err(Error::InvalidInput(format!(
                "line {}: gate index {idx} out of order (expected {})",
                lineno + 1,
                gates.len()
            )));
        }
        let kind = match tokens.next() {
            Some("AND") => GateKind::And,
            Some("OR") => GateKind::Or,
            Some("NOT") => GateKind::Not,
            Some("LTF") => GateKind::Ltf,
            other => {
                return Err(Error::InvalidInput(format!(
                    "line {}: unknown gate kind {other:?}",
                    lineno + 1
                )))
            }
        };
        let rest: Vec<&str> = tokens.collect();
        // Wire tokens start with i, !, or g; everything after them is numeric.
        let wire_count = rest
            .iter()
            .take_while(|t| t.starts_with('i') || t.starts_with('!') || t.starts_with('g'))
            .count();
        let inputs: Vec<Wire> = rest[..wire_count]
            .iter()
            .map(|t| parse_wire(t, lineno + 1))
            .collect::<Result<_>>()?;
        let numbers: Vec<BigInt> = rest[wire_count..]
            .iter()
            .map(|t| {
                BigInt::from_str(t).map_err(|_| {
                    Error::InvalidInput(format!("line {}: malformed integer {t:?}", lineno + 1))
                })
            })
            .collect::<Result<_>>()?;
        let gate = match kind {
            GateKind::Ltf => {
                if numbers.len() != inputs.len() + 1 {
                    return Err(Error::InvalidInput(format!(
                        "line {}: LTF gate needs {} weights plus a threshold, got {} numbers",
                        lineno + 1,
                        inputs.len(),
                        numbers.len()
                    )));
                }
                let mut numbers = numbers;
                let threshold = numbers.pop().unwrap();
                Gate::ltf(inputs, numbers, threshold)
            }
            _ => {
                if !numbers.is_empty() {
                    return Err(Error::InvalidInput(format!(
                        "line {}: unexpected numbers on a {} gate",
                        lineno + 1,
                        kind.name()
                    )));
                }
                Gate { kind, inputs, weights: Vec::new(), threshold: BigInt::from(0) }
            }
        };
        gates.push(gate);
    }
    if gates.len() != size {
        return Err(Error::InvalidInput(format!(
            "header declares {size} gates but {} were given",
            gates.len()
        )));
    }
    let circuit = Circuit::new(n, k, gates)?;
    if circuit.depth() != depth {
        return Err(Error::InvalidInput(format!(
            "header declares depth {depth} but the gate list has depth {}",
            circuit.depth()
        )));
    }
    Ok(circuit)
}
