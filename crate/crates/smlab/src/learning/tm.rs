//! The non-containment pattern family: members are `s . 0^(ceil(log2 m)+1) . 1`
//! for strings `s` of length `m` avoiding the all-zero block. The delimiter
//! forces alignment, so no member occurs inside the concatenation of two other
//! members; that property is what the shattered-set constructions rely on.

use crate::core::Pattern;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct TmFamily {
    m: usize,
    alphabet_size: u8,
    members: Vec<Pattern>,
}

impl TmFamily {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet_size
    }

    pub fn members(&self) -> &[Pattern] {
        &self.members
    }

    /// Length of every member: `m + ceil(log2 m) + 2`.
    pub fn member_len(&self) -> usize {
        self.m + ceil_log2_usize(self.m) + 2
    }

    /// Length of the forbidden all-zero block: `ceil(log2 m) + 1`.
    pub fn zero_block_len(&self) -> usize {
        ceil_log2_usize(self.m) + 1
    }
}

fn ceil_log2_usize(m: usize) -> usize {
    if m <= 1 {
        0
    } else {
        (usize::BITS - (m - 1).leading_zeros()) as usize
    }
}

/// Deterministically enumerate the first `count` members in lexicographic order
/// of the base string. At least `sigma^(m-1)` members exist; requesting more
/// than are available is a capacity error.
pub fn build_tm(m: usize, alphabet_size: u8, count: usize) -> Result<TmFamily> {
    if m < 1 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    if alphabet_size < 2 {
        return Err(Error::InvalidInput("alphabet size must be at least 2".into()));
    }
    let zb = ceil_log2_usize(m) + 1;
    let mut members = Vec::with_capacity(count);
    let mut s = vec![0u8; m];
    'enumerate: loop {
        if members.len() == count {
            break;
        }
        let has_zero_block = m >= zb && s.windows(zb).any(|w| w.iter().all(|&c| c == 0));
        if !has_zero_block {
            let mut symbols = s.clone();
            symbols.extend(std::iter::repeat_n(0, zb));
            symbols.push(1);
            members.push(Pattern::new(symbols, alphabet_size)?);
        }
        // Odometer step in lexicographic order.
        let mut pos = m;
        loop {
            if pos == 0 {
                break 'enumerate;
            }
            pos -= 1;
            s[pos] += 1;
            if s[pos] < alphabet_size {
                break;
            }
            s[pos] = 0;
        }
    }
    if members.len() < count {
        return Err(Error::Capacity(format!(
            "enumeration exhausted after {} members, {count} requested",
            members.len()
        )));
    }
    Ok(TmFamily { m, alphabet_size, members })
}

/// Total number of family members for these parameters, by enumeration.
/// Always at least `sigma^(m-1)`.
pub fn count_all_members(m: usize, alphabet_size: u8) -> u128 {
    let zb = ceil_log2_usize(m) + 1;
    let mut s = vec![0u8; m];
    let mut total = 0u128;
    'enumerate: loop {
        let has_zero_block = m >= zb && s.windows(zb).any(|w| w.iter().all(|&c| c == 0));
        if !has_zero_block {
            total += 1;
        }
        let mut pos = m;
        loop {
            if pos == 0 {
                break 'enumerate;
            }
            pos -= 1;
            s[pos] += 1;
            if s[pos] < alphabet_size {
                break;
            }
            s[pos] = 0;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{sm_oracle, Text};
    use crate::learning::contains;

    #[test]
    fn m1_pinned() {
        // m = 1: zero block "0", bases {1}, single member 101 of length 3.
        let fam = build_tm(1, 2, 1).unwrap();
        assert_eq!(fam.member_len(), 3);
        assert_eq!(fam.members().len(), 1);
        assert_eq!(fam.members()[0].to_string(), "101");
        assert!(matches!(build_tm(1, 2, 2), Err(Error::Capacity(_))));
    }

    #[test]
    fn member_counts_meet_bound() {
        for m in 1..=6usize {
            for sigma in [2u8, 3] {
                let all = count_all_members(m, sigma);
                let bound = (sigma as u128).pow(m as u32 - 1);
                assert!(all >= bound, "m={m} sigma={sigma}: {all} < {bound}");
                let fam = build_tm(m, sigma, bound as usize).unwrap();
                assert_eq!(fam.members().len(), bound as usize);
                assert!(fam.members().iter().all(|p| p.len() == fam.member_len()));
            }
        }
    }

    #[test]
    fn base_count_matches_core_avoiding_count() {
        // For sigma = 2 the valid bases are exactly the strings avoiding 0^zb.
        for m in 1..=10usize {
            let zb = ceil_log2_usize(m) + 1;
            let expected = crate::core::count_avoiding(m, zb).unwrap();
            assert_eq!(
                count_all_members(m, 2).to_string(),
                expected.to_string(),
                "m={m}"
            );
        }
    }

    #[test]
    fn triple_non_containment_exhaustive() {
        for m in 1..=5usize {
            let total = count_all_members(m, 2) as usize;
            let fam = build_tm(m, 2, total).unwrap();
            let members = fam.members();
            for (i, t1) in members.iter().enumerate() {
                for (j, t2) in members.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let mut cat = t1.symbols().to_vec();
                    cat.extend_from_slice(t2.symbols());
                    let cat = Text::binary(cat).unwrap();
                    for (l, t3) in members.iter().enumerate() {
                        if l == i || l == j {
                            continue;
                        }
                        assert!(
                            !sm_oracle(&cat, t3).unwrap(),
                            "m={m}: member {l} occurs in concat of {i},{j}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn triple_non_containment_sampled_m8() {
        let fam = build_tm(8, 2, 24).unwrap();
        let members = fam.members();
        for (i, t1) in members.iter().enumerate() {
            for (j, t2) in members.iter().enumerate().step_by(3) {
                if i == j {
                    continue;
                }
                let mut cat = t1.symbols().to_vec();
                cat.extend_from_slice(t2.symbols());
                let cat = Text::binary(cat).unwrap();
                for (l, t3) in members.iter().enumerate() {
                    if l != i && l != j {
                        assert!(!contains(&cat, t3).unwrap());
                    }
                }
            }
        }
    }
}
