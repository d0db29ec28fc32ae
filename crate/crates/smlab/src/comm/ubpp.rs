//! Unambiguous-randomized (UBPP) protocols: a witness is guessed
//! nondeterministically and verified with randomness. On 1-inputs exactly one
//! witness must be accepted, on 0-inputs none. The harness enumerates every
//! witness and reports the accepted set; guess bits are accounted in
//! `witness_bits`, verification bits in `comm_bits` (maximum over branches,
//! since branches are alternatives rather than a sequential run).

use super::equality::{equality_subprotocol, EqMode, OwnedBit, DEFAULT_FIELD_PRIME};
use super::{ceil_log2, Bipartition, CommInstance, Party, ProtocolRun, RandomSource, Transcript};
use crate::core::Text;
use crate::{Error, Result};

/// Trials for the empirical acceptance rule under randomized verification:
/// a witness is accepted when at least half the trials accept. Exact mode
/// bypasses the rule.
pub const ACCEPTANCE_TRIALS: u64 = 200;

#[derive(Clone, Debug)]
pub struct UbppOutcome {
    /// Witnesses accepted by the verifier, in increasing order.
    pub accepted: Vec<usize>,
    pub run: ProtocolRun,
}

impl UbppOutcome {
    /// The single accepted witness, when the run is unambiguous.
    pub fn unique_witness(&self) -> Option<usize> {
        match self.accepted.as_slice() {
            [w] => Some(*w),
            _ => None,
        }
    }
}

fn distinct_prime_factors(mut w: usize) -> Vec<usize> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= w {
        if w.is_multiple_of(p) {
            primes.push(p);
            while w.is_multiple_of(p) {
                w /= p;
            }
        }
        p += 1;
    }
    if w > 1 {
        primes.push(w);
    }
    primes
}

fn x_side(x: &Text, bip: &Bipartition, range: std::ops::Range<usize>) -> Vec<OwnedBit> {
    range
        .map(|i| OwnedBit { value: x.symbols()[i] == 1, owner: bip.owner(i) })
        .collect()
}

/// One verification pass for the period-order witness `w`: check that `w` is a
/// period (the string equals itself shifted by `w`) and that `w/p` is not, for
/// every prime `p` dividing `w`. Bob reports the verdict in one bit.
fn verify_period_witness(
    x: &Text,
    bip: &Bipartition,
    w: usize,
    rng: &RandomSource,
    salt: u64,
    mode: EqMode,
) -> Result<(bool, Transcript)> {
    let n = x.len();
    let mut coins = rng.stream(Party::Alice, salt);
    let mut t = Transcript::new();
    let test = |order: usize, t: &mut Transcript, coins: &mut _| -> Result<bool> {
        let u = x_side(x, bip, order..n);
        let v = x_side(x, bip, 0..n - order);
        equality_subprotocol(&u, &v, t, coins, DEFAULT_FIELD_PRIME, mode)
    };
    let mut accept = test(w, &mut t, &mut coins)?;
    for p in distinct_prime_factors(w) {
        let shorter_is_period = test(w / p, &mut t, &mut coins)?;
        accept = accept && !shorter_is_period;
    }
    t.send_bit(Party::Bob, accept);
    Ok((accept, t))
}

fn accept_with_rule(
    mode: EqMode,
    trials: u64,
    mut one_pass: impl FnMut(u64) -> Result<(bool, Transcript)>,
) -> Result<(bool, Transcript)> {
    match mode {
        EqMode::Exact => one_pass(0),
        EqMode::Fingerprint => {
            let mut accepts = 0u64;
            let mut first = None;
            for trial in 0..trials {
                let (ok, transcript) = one_pass(trial)?;
                if ok {
                    accepts += 1;
                }
                if first.is_none() {
                    first = Some(transcript);
                }
            }
            Ok((2 * accepts >= trials, first.unwrap_or_default()))
        }
    }
}

/// UBPP protocol deciding whether the distributed string `x` has a primitive
/// period, and computing its order. The witness is the candidate order
/// `w in [1, n/2]` (`ceil(log2 n)` guess bits); in exact mode exactly one
/// witness is accepted when a primitive period exists and none otherwise.
pub fn ubpp_period_finding(
    x: &Text,
    bip: &Bipartition,
    rng: &RandomSource,
    mode: EqMode,
) -> Result<UbppOutcome> {
    period_finding_with_trials(x, bip, rng, mode, ACCEPTANCE_TRIALS, 0)
}

pub(super) fn period_finding_with_trials(
    x: &Text,
    bip: &Bipartition,
    rng: &RandomSource,
    mode: EqMode,
    trials: u64,
    salt: u64,
) -> Result<UbppOutcome> {
    if x.alphabet_size() != 2 {
        return Err(Error::InvalidInput("protocols run over the binary alphabet".into()));
    }
    let n = x.len();
    if bip.len() != n {
        return Err(Error::InvalidInput(format!(
            "bipartition covers {} coordinates, string has {n}",
            bip.len()
        )));
    }
    let mut accepted = Vec::new();
    let mut max_bits = 0u64;
    let mut transcript = Transcript::new();
    for w in 1..=n / 2 {
        let (ok, t) = accept_with_rule(mode, trials, |trial| {
            verify_period_witness(x, bip, w, rng, salt ^ ((w as u64) << 32) ^ trial, mode)
        })?;
        max_bits = max_bits.max(t.comm_bits());
        if ok {
            accepted.push(w);
            transcript = t;
        }
    }
    let output = !accepted.is_empty();
    let run = ProtocolRun {
        comm_bits: max_bits,
        witness_bits: ceil_log2(n as u64) as u64,
        transcript,
        output,
        seed: rng.seed,
    };
    Ok(UbppOutcome { accepted, run })
}

/// UBPP protocol for `SM` with a long pattern (`k >= 0.9 n` unless explicitly
/// overridden). The witness is a start position `i in [1, n]`; verification
/// runs period finding on `y`, then checks the occurrence at `i`, and, when
/// `y` has a primitive period of order `l`, additionally that `y` does not
/// occur at `i - l`. In exact mode the accepted set is exactly the earliest
/// occurrence on 1-inputs and empty on 0-inputs.
pub fn ubpp_sm_large(
    inst: &CommInstance,
    rng: &RandomSource,
    mode: EqMode,
    allow_below_threshold: bool,
) -> Result<UbppOutcome> {
    let n = inst.n();
    let k = inst.k();
    if 10 * k < 9 * n && !allow_below_threshold {
        return Err(Error::Parameter(format!(
            "ubpp-sm needs k >= 0.9n (k={k}, n={n}); pass the override to run anyway \
             (unambiguity is only guaranteed in the large-k regime)"
        )));
    }
    let y_bip = inst.bipartition().slice(n..n + k);
    let y_text = inst.y().as_text();

    let trials = match mode {
        EqMode::Exact => 1,
        EqMode::Fingerprint => ACCEPTANCE_TRIALS,
    };

    // The period structure of y does not depend on the witness: resolve it once
    // per trial and reuse the result across witness branches, charging every
    // branch the subprotocol's full cost c1 + c2. Within one verification trial
    // the inner period finding is itself a single randomized execution.
    let mut pf_cache: Vec<(Option<usize>, u64, Transcript)> = Vec::new();
    for trial in 0..trials {
        let pf = period_finding_with_trials(&y_text, &y_bip, rng, mode, 1, 0x5eed ^ trial)?;
        pf_cache.push((pf.unique_witness(), pf.run.total_cost(), pf.run.transcript));
    }

    let y_side: Vec<OwnedBit> = (0..k)
        .map(|j| OwnedBit { value: inst.y_bit(j), owner: inst.y_owner(j) })
        .collect();
    let mut accepted = Vec::new();
    let mut max_bits = 0u64;
    let mut transcript = Transcript::new();
    for i in 1..=n {
        let mut branch_bits = 0u64;
        let (ok, eq_transcript) = accept_with_rule(mode, trials, |trial| {
            let (order, pf_cost, _) = &pf_cache[trial as usize];
            let mut eq = Transcript::new();
            let mut coins = rng.stream(Party::Alice, ((i as u64) << 40) ^ trial);
            let accept = if i - 1 + k > n {
                false
            } else {
                let occurs_at = |s: usize, eq: &mut Transcript, coins: &mut _| -> Result<bool> {
                    let u: Vec<OwnedBit> = (0..k)
                        .map(|p| OwnedBit { value: inst.x_bit(s + p), owner: inst.x_owner(s + p) })
                        .collect();
                    equality_subprotocol(&u, &y_side, eq, coins, DEFAULT_FIELD_PRIME, mode)
                };
                let here = occurs_at(i - 1, &mut eq, &mut coins)?;
                match order {
                    Some(ell) if here && i > *ell => {
                        !occurs_at(i - 1 - ell, &mut eq, &mut coins)?
                    }
                    _ => here,
                }
            };
            eq.send_bit(Party::Bob, accept);
            branch_bits = branch_bits.max(pf_cost + eq.comm_bits());
            Ok((accept, eq))
        })?;
        max_bits = max_bits.max(branch_bits);
        if ok {
            accepted.push(i);
            // Accepted-branch transcript: the period-finding phase then the
            // occurrence equalities.
            transcript = pf_cache[0].2.clone();
            transcript.append(eq_transcript);
        }
    }

    let output = !accepted.is_empty();
    let run = ProtocolRun {
        comm_bits: max_bits,
        witness_bits: ceil_log2(n as u64) as u64,
        transcript,
        output,
        seed: rng.seed,
    };
    Ok(UbppOutcome { accepted, run })
}
