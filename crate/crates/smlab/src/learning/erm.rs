//! Empirical risk minimization over the candidate set of all substrings of the
//! sample strings (length at most k), plus one fallback pattern occurring in no
//! sample string so the all-negative labeling is expressible.
//!
//! Every pattern either occurs in some sample string (and is then itself a
//! candidate) or occurs in none, in which case it predicts like the fallback;
//! so minimizing over candidates minimizes over the whole class.

use super::{contains, Sample};
use crate::core::Pattern;
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Learn a pattern of length at most `k` minimizing empirical loss. Ties break
/// by (loss, length, lexicographic); identical sample multisets give identical
/// results regardless of order.
pub fn erm_learn(samples: &[Sample], k: usize, alphabet_size: u8) -> Result<Pattern> {
    if samples.is_empty() {
        return Err(Error::InvalidInput("ERM needs at least one sample".into()));
    }
    if k < 1 {
        return Err(Error::InvalidInput("pattern length bound k must be at least 1".into()));
    }
    let n = samples[0].string.len();
    for s in samples {
        if s.string.alphabet_size() != alphabet_size {
            return Err(Error::InvalidInput("sample alphabet does not match".into()));
        }
        if s.string.len() != n {
            return Err(Error::InvalidInput("samples must share one string length".into()));
        }
    }

    let mut candidates: BTreeSet<Vec<u8>> = BTreeSet::new();
    for s in samples {
        let sym = s.string.symbols();
        for len in 1..=k.min(n) {
            for start in 0..=n - len {
                candidates.insert(sym[start..start + len].to_vec());
            }
        }
    }
    if let Some(fallback) = absent_pattern(samples, k, alphabet_size, n) {
        candidates.insert(fallback);
    }

    let mut best: Option<(usize, Vec<u8>)> = None;
    for cand in candidates {
        let pattern = Pattern::new(cand.clone(), alphabet_size)?;
        let mut miss = 0usize;
        for s in samples {
            if contains(&s.string, &pattern)? != s.label {
                miss += 1;
            }
        }
        let better = match &best {
            None => true,
            Some((best_miss, best_sym)) => {
                (miss, cand.len(), &cand) < (*best_miss, best_sym.len(), best_sym)
            }
        };
        if better {
            best = Some((miss, cand));
        }
    }
    let (_, symbols) = best.expect("candidate set is non-empty for non-empty samples");
    Pattern::new(symbols, alphabet_size)
}

/// A pattern of length `min(k, ceil(log_sigma(m*n)) + 1)` absent from every
/// sample string, found by enumerating that length in lexicographic order.
/// Pigeonhole guarantees existence unless the length is capped at `k`, in
/// which case absence may be impossible (every short pattern occurs) and the
/// fallback is skipped.
fn absent_pattern(samples: &[Sample], k: usize, alphabet_size: u8, n: usize) -> Option<Vec<u8>> {
    let m = samples.len();
    let sigma = alphabet_size as u128;
    let budget = (m as u128) * (n as u128);
    let mut log_ceil = 0usize;
    let mut power = 1u128;
    while power < budget {
        power *= sigma;
        log_ceil += 1;
    }
    let len = (log_ceil + 1).min(k).max(1);

    let mut seen: BTreeSet<&[u8]> = BTreeSet::new();
    for s in samples {
        let sym = s.string.symbols();
        if len <= n {
            for start in 0..=n - len {
                seen.insert(&sym[start..start + len]);
            }
        }
    }
    // Odometer over Sigma^len in lexicographic order.
    let mut current = vec![0u8; len];
    loop {
        if !seen.contains(current.as_slice()) {
            return Some(current);
        }
        let mut pos = len;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < alphabet_size {
                break;
            }
            current[pos] = 0;
        }
    }
}
