//! Brute-force VC dimension over a string pool: compute each hypothesis's
//! dichotomy signature, then search pool subsets in decreasing size for one
//! whose signature projections cover all dichotomies.

use super::{classify, Hypothesis, HypothesisClass, Variant};
use crate::core::Pattern;
use crate::core::Text;
use crate::{Error, Result};
use itertools::Itertools;
use std::collections::HashSet;

const HYPOTHESIS_BUDGET: u128 = 1_000_000;
/// Pool capacity: signatures are packed into u32 bitmasks.
const POOL_CAP: usize = 32;

/// Upper bound on the VC dimension: `min(ceil(k log2 sigma), floor(log2 n +
/// 0.5 log2 log2 n + 2))`; the second term needs `n >= 2`.
pub fn vc_upper_window(n: usize, k: usize, alphabet_size: u8) -> usize {
    let first = (k as f64 * (alphabet_size as f64).log2()).ceil() as usize;
    if n < 2 {
        return first;
    }
    let logn = (n as f64).log2();
    let second = (logn + 0.5 * logn.log2() + 2.0).floor() as usize;
    first.min(second)
}

fn enumerate_patterns(class: &HypothesisClass) -> Result<Vec<Pattern>> {
    let sigma = class.alphabet_size;
    let lengths: Vec<usize> = match class.variant {
        Variant::ExactlyK => vec![class.k],
        _ => (1..=class.k).collect(),
    };
    let mut count: u128 = 0;
    for &len in &lengths {
        count += (sigma as u128).pow(len as u32);
        if count > HYPOTHESIS_BUDGET {
            return Err(Error::Capacity(format!(
                "pattern enumeration exceeds {HYPOTHESIS_BUDGET}"
            )));
        }
    }
    let mut patterns = Vec::with_capacity(count as usize);
    for len in lengths {
        let mut symbols = vec![0u8; len];
        loop {
            patterns.push(Pattern::new(symbols.clone(), sigma)?);
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                symbols[pos] += 1;
                if symbols[pos] < sigma {
                    break;
                }
                symbols[pos] = 0;
            }
            if symbols.iter().all(|&s| s == 0) {
                break;
            }
        }
    }
    Ok(patterns)
}

fn hypothesis_space(class: &HypothesisClass) -> Result<Vec<Hypothesis>> {
    let patterns = enumerate_patterns(class)?;
    match class.variant {
        Variant::AtMostK | Variant::ExactlyK => {
            Ok(patterns.into_iter().map(|p| Hypothesis { patterns: vec![p], variant: class.variant }).collect())
        }
        Variant::AndOfC | Variant::OrOfC => {
            let n_pat = patterns.len() as u128;
            let mut combos: u128 = 1;
            for i in 0..class.c as u128 {
                combos = combos * (n_pat - i) / (i + 1);
                if combos > HYPOTHESIS_BUDGET {
                    return Err(Error::Capacity(format!(
                        "hypothesis enumeration exceeds {HYPOTHESIS_BUDGET}"
                    )));
                }
            }
            Ok(patterns
                .into_iter()
                .combinations(class.c)
                .map(|patterns| Hypothesis { patterns, variant: class.variant })
                .collect())
        }
    }
}

/// Exact VC dimension of the class restricted to `pool`. The pool may hold at
/// most 32 strings; the hypothesis space is enumerated within a fixed budget.
pub fn vc_exact(class: &HypothesisClass, pool: &[Text]) -> Result<usize> {
    if pool.len() > POOL_CAP {
        return Err(Error::Capacity(format!(
            "pool holds {} strings; the subset search supports at most {POOL_CAP}",
            pool.len()
        )));
    }
    for s in pool {
        if s.alphabet_size() != class.alphabet_size {
            return Err(Error::InvalidInput("pool string alphabet does not match the class".into()));
        }
    }
    let hypotheses = hypothesis_space(class)?;
    let mut signatures: HashSet<u32> = HashSet::new();
    for h in &hypotheses {
        let mut sig = 0u32;
        for (i, s) in pool.iter().enumerate() {
            if classify(h, s)? {
                sig |= 1 << i;
            }
        }
        signatures.insert(sig);
    }
    let signatures: Vec<u32> = signatures.into_iter().collect();

    // A set of size d needs 2^d distinct projections, so #signatures >= 2^d.
    let mut upper = pool.len();
    while upper > 0 && (signatures.len() as u128) < (1u128 << upper) {
        upper -= 1;
    }
    for d in (1..=upper).rev() {
        for subset in (0..pool.len()).combinations(d) {
            let mut seen = vec![false; 1 << d];
            let mut covered = 0usize;
            for &sig in &signatures {
                let mut proj = 0usize;
                for (b, &i) in subset.iter().enumerate() {
                    proj |= (((sig >> i) & 1) as usize) << b;
                }
                if !seen[proj] {
                    seen[proj] = true;
                    covered += 1;
                    if covered == 1 << d {
                        break;
                    }
                }
            }
            if covered == 1 << d {
                return Ok(d);
            }
        }
    }
    Ok(0)
}
