//! The interval protocols: deterministic fixed-pattern and small-k protocols,
//! and the randomized large-k protocol with primitive-period handling.

use super::equality::{equality_subprotocol, EqMode, OwnedBit, DEFAULT_FIELD_PRIME};
use super::{ceil_log2, CommInstance, Party, ProtocolRun, RandomSource, Transcript};
use crate::core::{period_orders, Text};
use crate::{Error, Result};

/// Alice's per-interval message: the smallest and largest start positions in
/// `[lo, hi]` at which the public prefix `pref` could occur, judged only from
/// her own bits. Offsets are sent as `offset + 1` in `[1, cap]` with `cap + 1`
/// as the "none" sentinel, `ceil(log2(cap + 2))` bits each; both indices are
/// always sent so the message length is fixed. Returns the reconstructed text
/// values on `[i, j + |pref|)`: Bob's own bits where he owns them, the values
/// forced by consistency where Alice does.
fn minmax_reconstruct(
    inst: &CommInstance,
    pref: &[bool],
    lo: usize,
    hi: usize,
    cap: usize,
    t: &mut Transcript,
) -> Option<(usize, usize, Vec<bool>)> {
    debug_assert!(hi >= lo && hi - lo < cap);
    let consistent = |s: usize| {
        (0..pref.len()).all(|p| match inst.x_view(Party::Alice, s + p) {
            Some(bit) => bit == pref[p],
            None => true,
        })
    };
    let i = (lo..=hi).find(|&s| consistent(s));
    let j = (lo..=hi).rev().find(|&s| consistent(s));
    let width = ceil_log2(cap as u64 + 2);
    let sentinel = cap as u64 + 1;
    let encode = |s: Option<usize>| s.map_or(sentinel, |s| (s - lo + 1) as u64);
    t.send_uint(Party::Alice, encode(i), width);
    t.send_uint(Party::Alice, encode(j), width);

    let (i, j) = (i?, j?);
    // Windows at i and j overlap (j - i < |pref|), so together they cover
    // [i, j + |pref|). On Alice-owned positions the inferred value equals her
    // true bit by the definition of consistency.
    debug_assert!(j - i < pref.len());
    let values = (i..j + pref.len())
        .map(|p| match inst.x_view(Party::Bob, p) {
            Some(bit) => bit,
            None => {
                if p < i + pref.len() {
                    pref[p - i]
                } else {
                    pref[p - j]
                }
            }
        })
        .collect();
    Some((i, j, values))
}

/// Interval phase of the fixed-pattern protocol, appended to `t`. The pattern
/// is public; the bipartition only matters for `x`. Cost is exactly
/// `ceil((n-k+1)/k) * (2 * ceil(log2(k+2)) + 1)` bits.
fn fixed_pattern_phase(inst: &CommInstance, y_public: &[bool], t: &mut Transcript) -> bool {
    let n = inst.n();
    let k = y_public.len();
    debug_assert!(k >= 1 && k <= n);
    let last_start = n - k;
    let mut output = false;
    let mut lo = 0usize;
    while lo <= last_start {
        let hi = (lo + k - 1).min(last_start);
        let found = match minmax_reconstruct(inst, y_public, lo, hi, k, t) {
            None => false,
            Some((i, j, values)) => (i..=j).any(|s| {
                (0..k).all(|p| values[s - i + p] == y_public[p])
            }),
        };
        t.send_bit(Party::Bob, found);
        output |= found;
        lo += k;
    }
    output
}

/// Deterministic protocol for a pattern known to both players. Output equals
/// the oracle on every input and bipartition; cost is at most
/// `ceil(n/k) * (2 * ceil(log2(k+2)) + 1)` bits.
pub fn protocol_fixed_pattern(inst: &CommInstance, rng: &RandomSource) -> Result<ProtocolRun> {
    let y_public: Vec<bool> = (0..inst.k()).map(|t| inst.y_bit(t)).collect();
    let mut t = Transcript::new();
    let output = fixed_pattern_phase(inst, &y_public, &mut t);
    Ok(ProtocolRun::from_transcript(t, output, rng.seed))
}

/// Deterministic protocol for a distributed pattern: the `k` pattern bits are
/// exchanged (one bit per coordinate, sent by its owner), then the
/// fixed-pattern protocol runs. Cost at most `k + ceil(n/k) * (2 *
/// ceil(log2(k+2)) + 1)`.
pub fn protocol_small_k(inst: &CommInstance, rng: &RandomSource) -> Result<ProtocolRun> {
    let mut t = Transcript::new();
    let mut y_public = Vec::with_capacity(inst.k());
    for j in 0..inst.k() {
        let bit = inst.y_bit(j);
        t.send_bit(inst.y_owner(j), bit);
        y_public.push(bit);
    }
    let output = fixed_pattern_phase(inst, &y_public, &mut t);
    Ok(ProtocolRun::from_transcript(t, output, rng.seed))
}

/// Which case of the large-k protocol a run took.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LargeKBranch {
    /// The exchanged pattern prefix has no period of order <= b.
    NoShortPeriod,
    /// The pattern is a prefix of a power of its primitive period; the players
    /// reconstruct it fully and fall back to the fixed-pattern protocol.
    PeriodicFallback,
    /// The pattern deviates from the periodic extension; the deviating block is
    /// exchanged and the aperiodic prefix drives the interval phase.
    DeviatingBlock,
}

#[derive(Clone, Debug)]
pub struct LargeKRun {
    pub run: ProtocolRun,
    pub branch: LargeKBranch,
}

/// Randomized protocol for large patterns (`k >= 2b`, `b` defaulting to
/// `ceil(sqrt(n))`). The players exchange the prefix `p = y[0..2b)`; if it has
/// a period of order at most `b` they agree on its primitive period, find the
/// largest power that prefixes `y`, and either reconstruct `y` entirely or
/// exchange the deviating block to obtain an aperiodic prefix. The interval
/// phase then tests each of the `ceil((n-k+1)/b)` start intervals: at most one
/// candidate start survives per interval, and a fingerprint equality checks the
/// full pattern there. Never errs on inputs without an occurrence candidate;
/// fingerprint false positives are bounded by `n/q` per interval.
pub fn protocol_large_k(
    inst: &CommInstance,
    block: Option<usize>,
    mode: EqMode,
    rng: &RandomSource,
) -> Result<LargeKRun> {
    let n = inst.n();
    let k = inst.k();
    let b = block.unwrap_or_else(|| (1..).find(|&b| b * b >= n).unwrap());
    if b < 1 {
        return Err(Error::Parameter("block length must be at least 1".into()));
    }
    if k < 2 * b {
        return Err(Error::Parameter(format!(
            "large-k protocol needs k >= 2b, got k={k} b={b}"
        )));
    }
    let q = DEFAULT_FIELD_PRIME;
    let mut alice_coins = rng.stream(Party::Alice, 0);
    let mut t = Transcript::new();

    // Exchange the prefix p = y[0..2b).
    let mut p = Vec::with_capacity(2 * b);
    for j in 0..2 * b {
        let bit = inst.y_bit(j);
        t.send_bit(inst.y_owner(j), bit);
        p.push(bit);
    }

    // Both players inspect p locally for a period of order <= b.
    let p_text = Text::binary(p.iter().map(|&v| v as u8).collect())?;
    let p_primitive = period_orders(&p_text)?
        .orders()
        .iter()
        .copied()
        .find(|&i| i <= b);

    let (pref, branch) = match p_primitive {
        None => (p, LargeKBranch::NoShortPeriod),
        Some(ell) => {
            let pbar = &p[..ell];
            let periodic_bit = |j: usize| pbar[j % ell];
            // Largest m with p-bar^m a prefix of y, judged per party and combined.
            let m_cap = k / ell;
            let m_party = |party: Party| -> u64 {
                let mut m = m_cap as u64;
                for j in 0..k {
                    if let Some(bit) = inst.y_view(party, j) {
                        if bit != periodic_bit(j) {
                            m = m.min((j / ell) as u64);
                            break;
                        }
                    }
                }
                m
            };
            let width = ceil_log2(m_cap as u64 + 1);
            let m_a = m_party(Party::Alice);
            t.send_uint(Party::Alice, m_a, width);
            let m_b = m_party(Party::Bob);
            t.send_uint(Party::Bob, m_b, width);
            let m = m_a.min(m_b) as usize;

            // Is y a prefix of p-bar^(m+1)? Each party checks its own bits.
            let fully_periodic = |party: Party| {
                (0..k).all(|j| match inst.y_view(party, j) {
                    Some(bit) => bit == periodic_bit(j),
                    None => true,
                })
            };
            let fa = fully_periodic(Party::Alice);
            t.send_bit(Party::Alice, fa);
            let fb = fully_periodic(Party::Bob);
            t.send_bit(Party::Bob, fb);

            if fa && fb {
                // y is determined by (p-bar, k): run the fixed-pattern protocol.
                let y_public: Vec<bool> = (0..k).map(periodic_bit).collect();
                debug_assert!((0..k).all(|j| y_public[j] == inst.y_bit(j)));
                let output = fixed_pattern_phase(inst, &y_public, &mut t);
                return Ok(LargeKRun {
                    run: ProtocolRun::from_transcript(t, output, rng.seed),
                    branch: LargeKBranch::PeriodicFallback,
                });
            }

            // Exchange the deviating block q = y[m*ell .. min((m+1)*ell, k)).
            let q_hi = ((m + 1) * ell).min(k);
            let mut pref: Vec<bool> = (0..m * ell).map(periodic_bit).collect();
            for j in m * ell..q_hi {
                let bit = inst.y_bit(j);
                t.send_bit(inst.y_owner(j), bit);
                pref.push(bit);
            }
            (pref, LargeKBranch::DeviatingBlock)
        }
    };

    // pref is a prefix of y with no period of order <= b, so each length-b
    // interval holds at most one viable start.
    debug_assert!({
        let pt = Text::binary(pref.iter().map(|&v| v as u8).collect()).unwrap();
        period_orders(&pt).unwrap().orders().iter().all(|&i| i > b)
    });

    let last_start = n - k;
    let cand_width = ceil_log2(b as u64 + 2);
    let mut output = false;
    let mut lo = 0usize;
    while lo <= last_start {
        let hi = (lo + b - 1).min(last_start);
        let candidate = minmax_reconstruct(inst, &pref, lo, hi, b, &mut t).and_then(|(i, j, values)| {
            (i..=j).find(|&s| (0..pref.len()).all(|p| values[s - i + p] == pref[p]))
        });
        t.send_uint(
            Party::Bob,
            candidate.map_or(b as u64 + 1, |s| (s - lo + 1) as u64),
            cand_width,
        );
        if let Some(s) = candidate {
            let u: Vec<OwnedBit> = (0..k)
                .map(|p| OwnedBit { value: inst.x_bit(s + p), owner: inst.x_owner(s + p) })
                .collect();
            let v: Vec<OwnedBit> = (0..k)
                .map(|j| OwnedBit { value: inst.y_bit(j), owner: inst.y_owner(j) })
                .collect();
            let equal = equality_subprotocol(&u, &v, &mut t, &mut alice_coins, q, mode)?;
            t.send_bit(Party::Bob, equal);
            output |= equal;
        }
        lo += b;
    }

    Ok(LargeKRun { run: ProtocolRun::from_transcript(t, output, rng.seed), branch })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comm::Bipartition;
    use crate::core::{sm_packed, Pattern};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn instance(x_bits: u64, n: usize, y_bits: u64, k: usize, bip: Bipartition) -> CommInstance {
        CommInstance::new(Text::from_bits(x_bits, n), Pattern::from_bits(y_bits, k), bip).unwrap()
    }

    #[test]
    fn fixed_pattern_exhaustive_single_coordinate_bipartitions() {
        let rng = RandomSource::new(1);
        for n in 1..=8usize {
            for k in 1..=n {
                let bound = ((n - k) / k + 1) as u64 * (2 * ceil_log2(k as u64 + 2) as u64 + 1);
                for idx in 0..n + k {
                    let bip = Bipartition::single_alice(n + k, idx);
                    for x in 0..(1u64 << n) {
                        for y in 0..(1u64 << k) {
                            let inst = instance(x, n, y, k, bip.clone());
                            let run = protocol_fixed_pattern(&inst, &rng).unwrap();
                            assert_eq!(run.output, sm_packed(x, n, y, k), "n={n} k={k} x={x:b} y={y:b} idx={idx}");
                            assert!(run.comm_bits <= bound);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fixed_pattern_all_ones() {
        let n = 9;
        let k = 4;
        let bip = Bipartition::interleaved(n, k);
        let inst = instance((1 << n) - 1, n, (1 << k) - 1, k, bip);
        let run = protocol_fixed_pattern(&inst, &RandomSource::new(0)).unwrap();
        assert!(run.output);
    }

    #[test]
    fn small_k_cost_bound_k1() {
        // Degenerate k = 1: cost <= 1 + n * (2 * ceil(log2 3) + 1) = 1 + 3n.
        let rng = RandomSource::new(5);
        for n in 1..=10usize {
            for x in 0..(1u64 << n) {
                for y in 0..2u64 {
                    let inst = instance(x, n, y, 1, Bipartition::interleaved(n, 1));
                    let run = protocol_small_k(&inst, &rng).unwrap();
                    assert!(run.comm_bits <= 1 + 5 * n as u64);
                    assert_eq!(run.output, sm_packed(x, n, y, 1));
                }
            }
        }
    }

    #[test]
    fn small_k_exhaustive_with_random_bipartitions() {
        let rng = RandomSource::new(7);
        let mut bip_rng = ChaCha8Rng::seed_from_u64(123);
        for n in 1..=7usize {
            for k in 1..=n {
                let bound = k as u64
                    + ((n - k) / k + 1) as u64 * (2 * ceil_log2(k as u64 + 2) as u64 + 1);
                let pool: Vec<Bipartition> = (0..8)
                    .map(|_| Bipartition::random(n + k, &mut bip_rng))
                    .chain([Bipartition::canonical(n, k), Bipartition::interleaved(n, k)])
                    .collect();
                for x in 0..(1u64 << n) {
                    for y in 0..(1u64 << k) {
                        let bip = &pool[((x << k) | y) as usize % pool.len()];
                        let inst = instance(x, n, y, k, bip.clone());
                        let run = protocol_small_k(&inst, &rng).unwrap();
                        assert_eq!(run.output, sm_packed(x, n, y, k), "n={n} k={k} x={x:b} y={y:b}");
                        assert!(run.comm_bits <= bound, "cost {} over bound {bound}", run.comm_bits);
                    }
                }
            }
        }
    }

    #[test]
    fn small_k_y_owned_by_bob_matches() {
        let rng = RandomSource::new(2);
        let n = 10;
        let k = 3;
        for x in (0..(1u64 << n)).step_by(7) {
            for y in 0..(1u64 << k) {
                let inst = instance(x, n, y, k, Bipartition::canonical(n, k));
                let run = protocol_small_k(&inst, &rng).unwrap();
                assert_eq!(run.output, sm_packed(x, n, y, k));
            }
        }
    }

    #[test]
    fn large_k_parameter_errors() {
        let inst = instance(0b1010, 4, 0b11, 2, Bipartition::canonical(4, 2));
        assert!(matches!(
            protocol_large_k(&inst, Some(2), EqMode::Exact, &RandomSource::new(0)),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn large_k_exact_exhaustive_small() {
        let rng = RandomSource::new(9);
        let mut bip_rng = ChaCha8Rng::seed_from_u64(77);
        for (n, b) in [(6usize, 1usize), (7, 2), (9, 2)] {
            for k in (2 * b)..=n {
                let pool: Vec<Bipartition> = (0..6)
                    .map(|_| Bipartition::random(n + k, &mut bip_rng))
                    .chain([Bipartition::canonical(n, k), Bipartition::interleaved(n, k)])
                    .collect();
                for x in 0..(1u64 << n) {
                    for y in 0..(1u64 << k) {
                        let bip = &pool[((x << k) | y) as usize % pool.len()];
                        let inst = instance(x, n, y, k, bip.clone());
                        let run = protocol_large_k(&inst, Some(b), EqMode::Exact, &rng).unwrap();
                        assert_eq!(run.run.output, sm_packed(x, n, y, k), "n={n} k={k} b={b} x={x:b} y={y:b}");
                    }
                }
            }
        }
    }

    #[test]
    fn large_k_periodic_pattern_takes_fallback_branch() {
        // y = (01)^4: prefix is fully periodic, so the run must take the
        // reconstruct-and-fall-back branch and still match the oracle.
        let n = 12;
        let k = 8;
        let y = 0b10101010u64; // bit t = symbol t: 0,1,0,1,...
        for x in (0..(1u64 << n)).step_by(11) {
            let inst = instance(x, n, y, k, Bipartition::interleaved(n, k));
            let run = protocol_large_k(&inst, Some(2), EqMode::Exact, &RandomSource::new(4)).unwrap();
            assert_eq!(run.branch, LargeKBranch::PeriodicFallback);
            assert_eq!(run.run.output, sm_packed(x, n, y, k));
        }
    }

    #[test]
    fn large_k_deviating_block_branch() {
        // Prefix (b=2, so y[0..4) = 0101) is periodic but y deviates later.
        let n = 12;
        let k = 8;
        let y = 0b11001010u64; // symbols 0,1,0,1,0,0,1,1
        let inst = instance(0, n, y, k, Bipartition::interleaved(n, k));
        let run = protocol_large_k(&inst, Some(2), EqMode::Exact, &RandomSource::new(4)).unwrap();
        assert_eq!(run.branch, LargeKBranch::DeviatingBlock);
        assert!(!run.run.output);
    }

    #[test]
    fn determinism_bit_for_bit() {
        let n = 16;
        let k = 9;
        let inst = instance(0xbeef, n, 0x1ab, k, Bipartition::interleaved(n, k));
        let r1 = protocol_large_k(&inst, Some(3), EqMode::Fingerprint, &RandomSource::new(42)).unwrap();
        let r2 = protocol_large_k(&inst, Some(3), EqMode::Fingerprint, &RandomSource::new(42)).unwrap();
        assert_eq!(r1.run.transcript, r2.run.transcript);
        let r3 = protocol_large_k(&inst, Some(3), EqMode::Fingerprint, &RandomSource::new(43)).unwrap();
        assert_eq!(r1.run.output, r3.run.output);
    }
}
