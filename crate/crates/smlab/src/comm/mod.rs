//! Two-party communication harness for `SM(x, y)` under an adversarial
//! bipartition of the input bits.
//!
//! The two parties are co-routined deterministically: a protocol is a function
//! that reads each party's view of the instance and appends fixed-format
//! messages to a shared [`Transcript`]. Identical `(inputs, bipartition, seed)`
//! produce bit-for-bit identical transcripts. Communication cost is the total
//! message length in bits; UBPP witness guesses are accounted separately in
//! `witness_bits`.

mod equality;
mod protocols;
mod reduce;
mod ubpp;
mod verify;

pub use equality::{equality_subprotocol, is_prime_u64, EqMode, OwnedBit, DEFAULT_FIELD_PRIME};
pub use protocols::{protocol_fixed_pattern, protocol_large_k, protocol_small_k, LargeKBranch, LargeKRun};
pub use reduce::{disjointness, or_gt, reduce_disj_to_sm, reduce_or_gt_to_sm, Reduction};
pub use ubpp::{ubpp_period_finding, ubpp_sm_large, UbppOutcome};
pub use verify::{verify_protocol, verify_protocols, ProtocolId, VerifyConfig, VerifyMode, VerifyReport, VerifyRow};

use crate::core::{Pattern, Text};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Party {
    Alice,
    Bob,
}

impl Party {
    pub fn other(self) -> Party {
        match self {
            Party::Alice => Party::Bob,
            Party::Bob => Party::Alice,
        }
    }
}

/// Assignment of each coordinate of the concatenated input (`x` then `y`) to a party.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    owner: Vec<Party>,
}

impl Bipartition {
    pub fn new(owner: Vec<Party>) -> Self {
        Self { owner }
    }

    /// Alice holds all of `x`, Bob all of `y`.
    pub fn canonical(n: usize, k: usize) -> Self {
        let mut owner = vec![Party::Alice; n];
        owner.extend(vec![Party::Bob; k]);
        Self { owner }
    }

    /// Coordinates alternate between the parties.
    pub fn interleaved(n: usize, k: usize) -> Self {
        let owner = (0..n + k)
            .map(|i| if i % 2 == 0 { Party::Alice } else { Party::Bob })
            .collect();
        Self { owner }
    }

    /// Alice owns exactly the coordinate `idx`.
    pub fn single_alice(total: usize, idx: usize) -> Self {
        let owner = (0..total)
            .map(|i| if i == idx { Party::Alice } else { Party::Bob })
            .collect();
        Self { owner }
    }

    pub fn random(total: usize, rng: &mut impl Rng) -> Self {
        let owner = (0..total)
            .map(|_| if rng.gen::<bool>() { Party::Alice } else { Party::Bob })
            .collect();
        Self { owner }
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn owner(&self, coord: usize) -> Party {
        self.owner[coord]
    }

    /// The sub-bipartition over a coordinate range, re-based at zero.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Bipartition {
        Bipartition { owner: self.owner[range].to_vec() }
    }
}

/// A string-matching instance with its input bits split between the parties.
/// Coordinates `0..n` are the text, `n..n+k` the pattern.
#[derive(Clone, Debug)]
pub struct CommInstance {
    x: Text,
    y: Pattern,
    bipartition: Bipartition,
}

impl CommInstance {
    pub fn new(x: Text, y: Pattern, bipartition: Bipartition) -> Result<Self> {
        if x.alphabet_size() != 2 || y.alphabet_size() != 2 {
            return Err(Error::InvalidInput("protocols run over the binary alphabet".into()));
        }
        if y.len() > x.len() {
            return Err(Error::InvalidInput(format!(
                "pattern length {} exceeds text length {}",
                y.len(),
                x.len()
            )));
        }
        if bipartition.len() != x.len() + y.len() {
            return Err(Error::InvalidInput(format!(
                "bipartition covers {} coordinates, instance has {}",
                bipartition.len(),
                x.len() + y.len()
            )));
        }
        Ok(Self { x, y, bipartition })
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn k(&self) -> usize {
        self.y.len()
    }

    pub fn x(&self) -> &Text {
        &self.x
    }

    pub fn y(&self) -> &Pattern {
        &self.y
    }

    pub fn bipartition(&self) -> &Bipartition {
        &self.bipartition
    }

    pub fn x_bit(&self, i: usize) -> bool {
        self.x.symbols()[i] == 1
    }

    pub fn y_bit(&self, t: usize) -> bool {
        self.y.symbols()[t] == 1
    }

    pub fn x_owner(&self, i: usize) -> Party {
        self.bipartition.owner(i)
    }

    pub fn y_owner(&self, t: usize) -> Party {
        self.bipartition.owner(self.n() + t)
    }

    /// `party`'s view of `x_i`: the value if it owns the coordinate.
    pub fn x_view(&self, party: Party, i: usize) -> Option<bool> {
        (self.x_owner(i) == party).then(|| self.x_bit(i))
    }

    pub fn y_view(&self, party: Party, t: usize) -> Option<bool> {
        (self.y_owner(t) == party).then(|| self.y_bit(t))
    }
}

/// Coin model: one shared public stream, or an independent stream per party.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoinMode {
    Shared,
    Private,
}

/// Seeded randomness for a protocol run. Identical seed and mode give an
/// identical run.
#[derive(Clone, Copy, Debug)]
pub struct RandomSource {
    pub seed: u64,
    pub mode: CoinMode,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self { seed, mode: CoinMode::Private }
    }

    pub fn shared(seed: u64) -> Self {
        Self { seed, mode: CoinMode::Shared }
    }

    /// Deterministic stream for `party`, distinguished by a caller-chosen salt.
    pub fn stream(&self, party: Party, salt: u64) -> ChaCha8Rng {
        let party_tag = match (self.mode, party) {
            (CoinMode::Shared, _) => 0u64,
            (CoinMode::Private, Party::Alice) => 1,
            (CoinMode::Private, Party::Bob) => 2,
        };
        ChaCha8Rng::seed_from_u64(splitmix(self.seed ^ splitmix(party_tag ^ splitmix(salt))))
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Message {
    pub sender: Party,
    pub bits: Vec<bool>,
}

/// The ordered sequence of messages exchanged in one run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Transcript {
    pub messages: Vec<Message>,
}

impl Transcript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn send(&mut self, sender: Party, bits: Vec<bool>) {
        self.messages.push(Message { sender, bits });
    }

    pub fn send_bit(&mut self, sender: Party, bit: bool) {
        self.send(sender, vec![bit]);
    }

    /// Fixed-width big-endian encoding of `value`.
    pub fn send_uint(&mut self, sender: Party, value: u64, width: usize) {
        debug_assert!(width == 64 || value < (1u64 << width));
        let bits = (0..width).rev().map(|b| (value >> b) & 1 == 1).collect();
        self.send(sender, bits);
    }

    pub fn comm_bits(&self) -> u64 {
        self.messages.iter().map(|m| m.bits.len() as u64).sum()
    }

    pub fn append(&mut self, other: Transcript) {
        self.messages.extend(other.messages);
    }
}

/// Outcome of one protocol execution.
#[derive(Clone, Debug)]
pub struct ProtocolRun {
    pub transcript: Transcript,
    /// Total message bits. For UBPP harnesses this is the maximum verification
    /// cost over witness branches, and the transcript is the accepted branch.
    pub comm_bits: u64,
    /// Nondeterministic guess bits; zero for plain protocols.
    pub witness_bits: u64,
    pub output: bool,
    pub seed: u64,
}

impl ProtocolRun {
    pub(crate) fn from_transcript(transcript: Transcript, output: bool, seed: u64) -> Self {
        let comm_bits = transcript.comm_bits();
        Self { transcript, comm_bits, witness_bits: 0, output, seed }
    }

    /// UBPP cost `c1 + c2`: guess bits plus verification bits.
    pub fn total_cost(&self) -> u64 {
        self.comm_bits + self.witness_bits
    }
}

/// Bits needed to write down a value in `[0, m)`; 0 for `m <= 1`.
pub(crate) fn ceil_log2(m: u64) -> usize {
    if m <= 1 {
        0
    } else {
        64 - (m - 1).leading_zeros() as usize
    }
}
