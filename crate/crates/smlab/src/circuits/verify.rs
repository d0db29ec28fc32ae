//! Equivalence checking of a circuit against the string-matching oracle,
//! exhaustively or by seeded Monte Carlo sampling.

use super::Circuit;
use crate::core::{sm_packed, Pattern, Text};
use crate::report::csv_document;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EquivMode {
    Exhaustive,
    MonteCarlo,
}

impl EquivMode {
    pub fn name(self) -> &'static str {
        match self {
            EquivMode::Exhaustive => "exhaustive",
            EquivMode::MonteCarlo => "monte-carlo",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub n: usize,
    pub k: usize,
    pub mode: String,
    pub evaluated: u64,
    pub mismatches: u64,
    pub seed: u64,
    /// Lexicographically first mismatching input, if any.
    pub counterexample: Option<(String, String)>,
}

impl EquivalenceReport {
    pub fn is_equivalent(&self) -> bool {
        self.mismatches == 0
    }

    pub fn to_csv(&self) -> String {
        csv_document(
            &["n", "k", "mode", "evaluated", "mismatches", "seed", "counterexample"],
            &[vec![
                self.n.to_string(),
                self.k.to_string(),
                self.mode.clone(),
                self.evaluated.to_string(),
                self.mismatches.to_string(),
                self.seed.to_string(),
                self.counterexample
                    .as_ref()
                    .map(|(x, y)| format!("x={x};y={y}"))
                    .unwrap_or_default(),
            ]],
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Compare `c` against the oracle. Exhaustive mode covers all `2^(n+k)` inputs
/// and requires `n + k <= 22`; Monte Carlo draws `trials` seeded random inputs.
pub fn verify_equivalence(c: &Circuit, mode: EquivMode, trials: u64, seed: u64) -> Result<EquivalenceReport> {
    let (n, k) = (c.n(), c.k());
    if k < 1 || k > n {
        return Err(Error::InvalidInput(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    let compiled = c.compile();
    let (evaluated, mismatches, counterexample) = match mode {
        EquivMode::Exhaustive => {
            if n + k > 24 {
                return Err(Error::Capacity(format!(
                    "exhaustive equivalence supports n + k <= 24, got {}",
                    n + k
                )));
            }
            let total = 1u64 << (n + k);
            let (mismatches, first) = (0..(1u64 << n))
                .into_par_iter()
                .map_init(
                    Vec::new,
                    |scratch, x| {
                        let mut bad = 0u64;
                        let mut first: Option<(u64, u64)> = None;
                        for y in 0..(1u64 << k) {
                            if compiled.eval_packed(x, y, scratch) != sm_packed(x, n, y, k) {
                                bad += 1;
                                if first.is_none() {
                                    first = Some((x, y));
                                }
                            }
                        }
                        (bad, first)
                    },
                )
                .reduce(
                    || (0u64, None),
                    |(c1, f1), (c2, f2)| (c1 + c2, merge_first(f1, f2)),
                );
            (total, mismatches, first)
        }
        EquivMode::MonteCarlo => {
            let x_mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            let y_mask = (1u64 << k) - 1;
            let (mismatches, first) = (0..trials)
                .into_par_iter()
                .map_init(
                    Vec::new,
                    |scratch, t| {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t));
                        let x = rng.gen::<u64>() & x_mask;
                        let y = rng.gen::<u64>() & y_mask;
                        if compiled.eval_packed(x, y, scratch) != sm_packed(x, n, y, k) {
                            (1u64, Some((x, y)))
                        } else {
                            (0u64, None)
                        }
                    },
                )
                .reduce(
                    || (0u64, None),
                    |(c1, f1), (c2, f2)| (c1 + c2, merge_first(f1, f2)),
                );
            (trials, mismatches, first)
        }
    };
    Ok(EquivalenceReport {
        n,
        k,
        mode: mode.name().to_string(),
        evaluated,
        mismatches,
        seed,
        counterexample: counterexample.map(|(x, y)| {
            (Text::from_bits(x, n).to_string(), Pattern::from_bits(y, k).to_string())
        }),
    })
}

fn merge_first(a: Option<(u64, u64)>, b: Option<(u64, u64)>) -> Option<(u64, u64)> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    }
}
