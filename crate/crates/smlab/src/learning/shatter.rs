//! Shattered-set constructions and the certificate verifier.
//!
//! A certificate lists `d` strings, `2^d` hypotheses, and the mapping from each
//! subset of the strings to the hypothesis realizing that dichotomy. The base
//! construction takes `2^d` patterns from the non-containment family and builds
//! string `i` as the concatenation of the patterns whose index has bit `i` set,
//! padded with ones; the family property keeps every other pattern out.

use super::tm::build_tm;
use super::{classify, Hypothesis, HypothesisClass, Variant};
use crate::core::{Pattern, Text};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct ShatterCertificate {
    pub strings: Vec<Text>,
    pub hypotheses: Vec<Hypothesis>,
    /// `mapping[subset_index]` is the hypothesis realizing that dichotomy.
    pub mapping: Vec<usize>,
}

impl ShatterCertificate {
    pub fn d(&self) -> usize {
        self.strings.len()
    }

    /// JSON shape: strings, patterns (one list per hypothesis), mapping.
    pub fn to_json(&self) -> String {
        let strings: Vec<String> = self.strings.iter().map(|s| s.to_string()).collect();
        let patterns: Vec<Vec<String>> = self
            .hypotheses
            .iter()
            .map(|h| h.patterns.iter().map(|p| p.to_string()).collect())
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "d": self.d(),
            "strings": strings,
            "patterns": patterns,
            "mapping": self.mapping,
        }))
        .expect("certificate serialization cannot fail")
    }
}

/// Check that every subset `I` of the strings is realized: the mapped
/// hypothesis classifies string `i` as 1 iff `i` is in `I`. Hypotheses must
/// satisfy the class constraints. Requires `d <= 24`.
pub fn verify_shattering(cert: &ShatterCertificate, class: &HypothesisClass) -> Result<bool> {
    let d = cert.d();
    if d > 24 {
        return Err(Error::Capacity(format!("verification supports d <= 24, got {d}")));
    }
    if cert.mapping.len() != 1usize << d {
        return Err(Error::InvalidInput(format!(
            "mapping has {} entries for d = {d}",
            cert.mapping.len()
        )));
    }
    for h in &cert.hypotheses {
        h.validate_for(class)?;
    }
    for s in &cert.strings {
        if s.len() != class.n || s.alphabet_size() != class.alphabet_size {
            return Err(Error::InvalidInput("certificate string violates the class shape".into()));
        }
    }
    for (subset, &h_idx) in cert.mapping.iter().enumerate() {
        let h = cert
            .hypotheses
            .get(h_idx)
            .ok_or_else(|| Error::InvalidInput(format!("mapping points at missing hypothesis {h_idx}")))?;
        for (i, s) in cert.strings.iter().enumerate() {
            let expected = (subset >> i) & 1 == 1;
            if classify(h, s)? != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn log2(v: f64) -> f64 {
    v.log2()
}

struct BaseParams {
    m: usize,
    d: usize,
}

fn base_params(n: usize, k: usize, sigma: u8) -> Result<BaseParams> {
    if n < 2 {
        return Err(Error::Degenerate(format!(
            "VC bound trivial: n = {n} leaves no room for the construction"
        )));
    }
    let log_sigma = log2(sigma as f64);
    let m_real = (k as f64 - log2(k as f64) - 3.0)
        .min((log2(n as f64) - log2(log2(n as f64))) / log_sigma + 1.0);
    let m = m_real.floor();
    if m < 1.0 {
        return Err(Error::Degenerate(format!(
            "VC bound trivial: m = floor({m_real:.3}) < 1 for n={n} k={k} sigma={sigma}"
        )));
    }
    let m = m as usize;
    let d = ((m as f64 - 1.0) * log_sigma).floor() as usize;
    Ok(BaseParams { m, d })
}

/// Assemble the strings: string `i` concatenates `patterns[j]` for every `j`
/// with bit `i` set, then pads with the symbol 1 to length `n`.
fn assemble_strings(
    patterns: &[Pattern],
    d: usize,
    n: usize,
    sigma: u8,
) -> Result<Vec<Text>> {
    let mut strings = Vec::with_capacity(d);
    for i in 0..d {
        let mut symbols = Vec::new();
        for (j, p) in patterns.iter().enumerate() {
            if (j >> i) & 1 == 1 {
                symbols.extend_from_slice(p.symbols());
            }
        }
        if symbols.len() > n {
            return Err(Error::Degenerate(format!(
                "construction does not fit: string {i} needs {} symbols, n = {n}",
                symbols.len()
            )));
        }
        symbols.resize(n, 1);
        strings.push(Text::new(symbols, sigma)?);
    }
    Ok(strings)
}

/// Shattered set for the at-most-k class: `d = floor((m-1) log2 sigma)` strings
/// with `2^d` patterns from the non-containment family, the dichotomy index
/// read off the binary expansion. Self-certifying: the result passes
/// [`verify_shattering`].
pub fn build_shattered_set(n: usize, k: usize, sigma: u8) -> Result<ShatterCertificate> {
    let BaseParams { m, d } = base_params(n, k, sigma)?;
    let family = build_tm(m, sigma, 1usize << d)?;
    if family.member_len() > k {
        return Err(Error::Degenerate(format!(
            "pattern length {} exceeds k = {k}",
            family.member_len()
        )));
    }
    let patterns = family.members().to_vec();
    let strings = assemble_strings(&patterns, d, n, sigma)?;
    let hypotheses = patterns.into_iter().map(Hypothesis::single).collect::<Vec<_>>();
    let mapping = (0..hypotheses.len()).collect();
    Ok(ShatterCertificate { strings, hypotheses, mapping })
}

/// Which multi-pattern class a certificate targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MultiVariant {
    And,
    Or,
}

/// Multi-pattern certificate for the AND or OR class with `c` patterns.
///
/// AND: every base pattern is replaced by its `c` longest prefixes; a string
/// contains the full pattern iff it contains all of them, so the dichotomies
/// are unchanged. OR: the base family is halved (one fewer string); each kept
/// pattern is padded with `c - 1` decoys drawn from the unused half, which
/// occur in no certificate string.
pub fn build_shattered_multi(
    n: usize,
    k: usize,
    sigma: u8,
    c: usize,
    variant: MultiVariant,
) -> Result<ShatterCertificate> {
    if c < 1 || c > k {
        return Err(Error::InvalidInput(format!("need 1 <= c <= k, got c={c} k={k}")));
    }
    match variant {
        MultiVariant::And => {
            let base = build_shattered_set(n, k, sigma)?;
            let hypotheses = base
                .hypotheses
                .iter()
                .map(|h| {
                    let p = &h.patterns[0];
                    let len = p.len();
                    if c > len {
                        return Err(Error::InvalidInput(format!(
                            "c = {c} exceeds the constructed pattern length {len}"
                        )));
                    }
                    let patterns = (len - c + 1..=len)
                        .map(|l| Pattern::new(p.symbols()[..l].to_vec(), sigma))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(Hypothesis { patterns, variant: Variant::AndOfC })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(ShatterCertificate { strings: base.strings, hypotheses, mapping: base.mapping })
        }
        MultiVariant::Or => {
            let BaseParams { m, d } = base_params(n, k, sigma)?;
            if d < 1 {
                return Err(Error::Degenerate("OR variant needs d >= 1 to halve the family".into()));
            }
            let d_or = d - 1;
            let kept = 1usize << d_or;
            if c > kept.saturating_sub(1).max(1) {
                return Err(Error::InvalidInput(format!(
                    "need c <= 2^(d-1) - 1 = {}, got c={c}",
                    kept.saturating_sub(1)
                )));
            }
            let family = build_tm(m, sigma, kept + (c - 1))?;
            if family.member_len() > k {
                return Err(Error::Degenerate(format!(
                    "pattern length {} exceeds k = {k}",
                    family.member_len()
                )));
            }
            let members = family.members();
            let decoys = &members[kept..];
            let strings = assemble_strings(&members[..kept], d_or, n, sigma)?;
            let hypotheses = members[..kept]
                .iter()
                .map(|p| {
                    let mut patterns = vec![p.clone()];
                    patterns.extend(decoys.iter().cloned());
                    Hypothesis { patterns, variant: Variant::OrOfC }
                })
                .collect();
            let mapping = (0..kept).collect();
            Ok(ShatterCertificate { strings, hypotheses, mapping })
        }
    }
}

/// Certificate for the exactly-k class: family patterns are front-padded with
/// ones to length exactly `k`; the trailing zero-block-then-one delimiter still
/// forces alignment, so the non-containment argument survives the padding.
pub fn build_shattered_exact_k(n: usize, k: usize, sigma: u8) -> Result<ShatterCertificate> {
    if n < 2 || k < 2 {
        return Err(Error::Degenerate(format!("VC bound trivial for n={n} k={k}")));
    }
    let log_sigma = log2(sigma as f64);
    let m_real = k as f64 - log2(k as f64) - 2.0;
    if m_real.floor() < 1.0 {
        return Err(Error::Degenerate(format!(
            "m = floor({m_real:.3}) < 1 for k={k}"
        )));
    }
    let m = m_real.floor() as usize;
    let d_real = ((k as f64 - log2(k as f64) - 5.0) * log_sigma + 1.0)
        .min(log2(n as f64) - log2(k as f64) + 1.0);
    if d_real.floor() < 0.0 {
        return Err(Error::Degenerate(format!("d = floor({d_real:.3}) < 0")));
    }
    let d = d_real.floor() as usize;
    let family = build_tm(m, sigma, 1usize << d)?;
    if family.member_len() > k {
        return Err(Error::Degenerate(format!(
            "natural pattern length {} exceeds k = {k}",
            family.member_len()
        )));
    }
    let pad = k - family.member_len();
    let patterns: Vec<Pattern> = family
        .members()
        .iter()
        .map(|p| {
            let mut symbols = vec![1u8; pad];
            symbols.extend_from_slice(p.symbols());
            Pattern::new(symbols, sigma)
        })
        .collect::<Result<_>>()?;
    let strings = assemble_strings(&patterns, d, n, sigma)?;
    let hypotheses = patterns
        .into_iter()
        .map(|p| Hypothesis { patterns: vec![p], variant: Variant::ExactlyK })
        .collect::<Vec<_>>();
    let mapping = (0..hypotheses.len()).collect();
    Ok(ShatterCertificate { strings, hypotheses, mapping })
}
