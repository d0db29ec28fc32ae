//! Pattern hypothesis classes over `Sigma^n`, the ERM PAC learner, shattered-set
//! constructions, and brute-force VC computation.

mod erm;
mod pac;
mod shatter;
mod tm;
mod vc;

pub use erm::erm_learn;
pub use pac::{pac_experiment, DistributionSpec, PacConfig, PacReport, PacTrialRow};
pub use shatter::{
    build_shattered_exact_k, build_shattered_multi, build_shattered_set, verify_shattering,
    MultiVariant, ShatterCertificate,
};
pub use tm::{build_tm, count_all_members, TmFamily};
pub use vc::{vc_exact, vc_upper_window};

use crate::core::{Pattern, Text};
use crate::{Error, Result};
use serde::Serialize;

/// Which family of classifiers a hypothesis belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// One pattern of length at most k.
    AtMostK,
    /// One pattern of length exactly k.
    ExactlyK,
    /// c distinct patterns; the classifier fires iff the string contains all of them.
    AndOfC,
    /// c distinct patterns; the classifier fires iff the string contains any of them.
    OrOfC,
}

/// A hypothesis class: strings of length `n` over an alphabet of size
/// `alphabet_size`, classified by patterns of length up to (or exactly) `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisClass {
    pub alphabet_size: u8,
    pub n: usize,
    pub k: usize,
    pub variant: Variant,
    /// Pattern count for the multi-pattern variants; 1 otherwise.
    pub c: usize,
}

impl HypothesisClass {
    pub fn new(alphabet_size: u8, n: usize, k: usize, variant: Variant, c: usize) -> Result<Self> {
        if alphabet_size < 2 {
            return Err(Error::InvalidInput("alphabet size must be at least 2".into()));
        }
        if k < 1 {
            return Err(Error::InvalidInput("pattern length bound k must be at least 1".into()));
        }
        let c_ok = match variant {
            Variant::AtMostK | Variant::ExactlyK => c == 1,
            Variant::AndOfC | Variant::OrOfC => c >= 1,
        };
        if !c_ok {
            return Err(Error::InvalidInput(format!(
                "pattern count c={c} is invalid for {variant:?}"
            )));
        }
        Ok(Self { alphabet_size, n, k, variant, c })
    }

    pub fn single(alphabet_size: u8, n: usize, k: usize) -> Result<Self> {
        Self::new(alphabet_size, n, k, Variant::AtMostK, 1)
    }

    /// Number of single patterns in the class: `(sigma^(k+1) - 1)/(sigma - 1)`
    /// for at-most-k (including the empty pattern slot counted by the formula),
    /// `sigma^k` for exactly-k.
    pub fn single_pattern_count(&self) -> u128 {
        let sigma = self.alphabet_size as u128;
        match self.variant {
            Variant::ExactlyK => sigma.pow(self.k as u32),
            _ => (sigma.pow(self.k as u32 + 1) - 1) / (sigma - 1),
        }
    }
}

/// One or more patterns with the containment semantics of `variant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypothesis {
    pub patterns: Vec<Pattern>,
    pub variant: Variant,
}

impl Hypothesis {
    pub fn single(pattern: Pattern) -> Self {
        Self { patterns: vec![pattern], variant: Variant::AtMostK }
    }

    /// Validate against a class: pattern count, lengths, distinctness, alphabet.
    pub fn validate_for(&self, class: &HypothesisClass) -> Result<()> {
        if self.variant != class.variant {
            return Err(Error::InvalidInput(format!(
                "hypothesis variant {:?} does not match class variant {:?}",
                self.variant, class.variant
            )));
        }
        let expected = match class.variant {
            Variant::AtMostK | Variant::ExactlyK => 1,
            Variant::AndOfC | Variant::OrOfC => class.c,
        };
        if self.patterns.len() != expected {
            return Err(Error::InvalidInput(format!(
                "hypothesis has {} patterns, class requires {expected}",
                self.patterns.len()
            )));
        }
        for p in &self.patterns {
            if p.alphabet_size() != class.alphabet_size {
                return Err(Error::InvalidInput("pattern alphabet does not match class".into()));
            }
            let len_ok = match class.variant {
                Variant::ExactlyK => p.len() == class.k,
                _ => p.len() <= class.k,
            };
            if !len_ok {
                return Err(Error::InvalidInput(format!(
                    "pattern length {} violates the class bound k={} ({:?})",
                    p.len(),
                    class.k,
                    class.variant
                )));
            }
        }
        for (i, p) in self.patterns.iter().enumerate() {
            if self.patterns[i + 1..].contains(p) {
                return Err(Error::InvalidInput("multi-pattern hypotheses need distinct patterns".into()));
            }
        }
        Ok(())
    }
}

/// Substring containment; unlike the oracle this treats a pattern longer than
/// the string as simply absent.
pub(crate) fn contains(s: &Text, p: &Pattern) -> Result<bool> {
    if s.alphabet_size() != p.alphabet_size() {
        return Err(Error::InvalidInput(format!(
            "alphabet mismatch: string has {}, pattern has {}",
            s.alphabet_size(),
            p.alphabet_size()
        )));
    }
    if p.len() > s.len() {
        return Ok(false);
    }
    crate::core::sm_oracle(s, p)
}

/// Apply a hypothesis to a string: all patterns must occur for the AND variant,
/// any for OR, and the single pattern itself for the single-pattern variants.
pub fn classify(h: &Hypothesis, s: &Text) -> Result<bool> {
    if h.patterns.is_empty() {
        return Err(Error::InvalidInput("hypothesis has no patterns".into()));
    }
    match h.variant {
        Variant::AtMostK | Variant::ExactlyK => {
            if h.patterns.len() != 1 {
                return Err(Error::InvalidInput(
                    "single-pattern variants take exactly one pattern".into(),
                ));
            }
            contains(s, &h.patterns[0])
        }
        Variant::AndOfC => {
            for p in &h.patterns {
                if !contains(s, p)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Variant::OrOfC => {
            for p in &h.patterns {
                if contains(s, p)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// A labeled example.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub string: Text,
    pub label: bool,
}
