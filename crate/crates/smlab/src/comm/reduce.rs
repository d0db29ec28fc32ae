//! Executable reductions to `SM`: set disjointness, and OR of blockwise
//! greater-than. Each returns a full instance (text, pattern, bipartition)
//! whose oracle value equals the source function value.

use super::{Bipartition, Party};
use crate::core::{Pattern, Text};
use crate::{Error, Result};

/// `DISJ(a, b) = OR_i (a_i AND b_i)`.
pub fn disjointness(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).any(|(&x, &y)| x && y)
}

/// `OR o GT`: true iff `a_i >= b_i` for some block `i`.
pub fn or_gt(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).any(|(&x, &y)| x >= y)
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub x: Text,
    pub y: Pattern,
    pub bipartition: Bipartition,
}

/// Disjointness reduction: per block `i`, the text gets `a_i b_i 1^(k-2) 0`
/// and the pattern is `1^k`, so an all-ones window of length `k` appears iff
/// some `a_i AND b_i`. Alice owns the `a` slots, Bob the `b` slots, and Alice
/// the rest. `|x| = m (k+1)`.
pub fn reduce_disj_to_sm(a: &[bool], b: &[bool], k: usize) -> Result<Reduction> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "vectors have lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::InvalidInput("vectors must be non-empty".into()));
    }
    if k < 2 {
        return Err(Error::Parameter(format!("disjointness reduction needs k >= 2, got {k}")));
    }
    let m = a.len();
    let mut x = Vec::with_capacity(m * (k + 1));
    let mut owner = Vec::with_capacity(m * (k + 1) + k);
    for i in 0..m {
        x.push(a[i] as u8);
        owner.push(Party::Alice);
        x.push(b[i] as u8);
        owner.push(Party::Bob);
        for _ in 0..k - 2 {
            x.push(1);
            owner.push(Party::Alice);
        }
        x.push(0);
        owner.push(Party::Alice);
    }
    owner.extend(std::iter::repeat_n(Party::Alice, k));
    Ok(Reduction {
        x: Text::binary(x)?,
        y: Pattern::binary(vec![1; k])?,
        bipartition: Bipartition::new(owner),
    })
}

/// OR-of-greater-than reduction. Per block, Alice's bits (odd positions within
/// the block, 0-based) are `1^(k+a_i) 0^(k-a_i)` and Bob's (even positions) are
/// `0^(b_i) 1^(2k+1-b_i)`; the interleaving has a longest all-ones run of
/// exactly `2(k + a_i - b_i + 1)`, which reaches the pattern `1^(2k+2)` iff
/// `a_i >= b_i`. Bob's stream carries one more symbol than Alice's (block
/// length `4k+1`): with a bare `2k`-symbol interleave the run is clipped one
/// short at `a_i = k`, where its closing position falls past the block end.
/// Adjacent blocks are separated by two literal zeros owned by Alice so
/// maximal runs cannot span blocks.
pub fn reduce_or_gt_to_sm(a: &[usize], b: &[usize], k: usize) -> Result<Reduction> {
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "vectors have lengths {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.is_empty() {
        return Err(Error::InvalidInput("vectors must be non-empty".into()));
    }
    if k < 1 {
        return Err(Error::Parameter("blocks need k >= 1".into()));
    }
    for (&v, side) in a.iter().zip(std::iter::repeat("a")).chain(b.iter().zip(std::iter::repeat("b"))) {
        if v < 1 || v > k {
            return Err(Error::InvalidInput(format!(
                "{side}-coordinate {v} outside [1, {k}]"
            )));
        }
    }
    let m = a.len();
    let mut x = Vec::new();
    let mut owner = Vec::new();
    for i in 0..m {
        if i > 0 {
            x.extend([0, 0]);
            owner.extend([Party::Alice, Party::Alice]);
        }
        let alice: Vec<u8> = (0..2 * k).map(|t| u8::from(t < k + a[i])).collect();
        let bob: Vec<u8> = (0..2 * k + 1).map(|t| u8::from(t >= b[i])).collect();
        for t in 0..2 * k {
            x.push(bob[t]);
            owner.push(Party::Bob);
            x.push(alice[t]);
            owner.push(Party::Alice);
        }
        x.push(bob[2 * k]);
        owner.push(Party::Bob);
    }
    let pattern_len = 2 * k + 2;
    owner.extend(std::iter::repeat_n(Party::Alice, pattern_len));
    Ok(Reduction {
        x: Text::binary(x)?,
        y: Pattern::binary(vec![1; pattern_len])?,
        bipartition: Bipartition::new(owner),
    })
}
