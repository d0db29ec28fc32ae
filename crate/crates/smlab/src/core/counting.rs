//! Countable quantities used as ground truth: the number of zero-preimages of
//! `SM`, the generalized-Fibonacci count of strings avoiding an all-zero block,
//! and the minimum maxterm width found by exhaustive restriction search.

use super::bits::sm_packed;
use crate::{Error, Result};
use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;

/// Exact number of pairs `(x, y)` in `{0,1}^(n+k)` with `SM(x, y) = 0`,
/// by enumeration. Exhaustive mode requires `1 <= k <= n <= 24`.
pub fn count_zero_preimages(n: usize, k: usize) -> Result<u128> {
    if k < 1 || k > n {
        return Err(Error::InvalidInput(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    if n > 24 {
        return Err(Error::Capacity(format!(
            "exhaustive zero-preimage count supports n <= 24, got n={n}"
        )));
    }
    // For each text, the zero-pairs are exactly the patterns that are not among
    // its k-windows: 2^k minus the number of distinct windows.
    let mut total: u128 = 0;
    let mut windows: Vec<u64> = Vec::with_capacity(n - k + 1);
    let mask = (1u64 << k) - 1;
    for x in 0..(1u64 << n) {
        windows.clear();
        for i in 0..=n - k {
            windows.push((x >> i) & mask);
        }
        windows.sort_unstable();
        windows.dedup();
        total += (1u128 << k) - windows.len() as u128;
    }
    Ok(total)
}

/// Number of binary strings of length `n` that avoid `0^k`, by the DP
/// `F_n = F_{n-1} + ... + F_{n-k}` with base cases `F_j = 2^j` for `j < k`.
pub fn count_avoiding(n: usize, k: usize) -> Result<BigUint> {
    if k < 1 {
        return Err(Error::InvalidInput("block length k must be at least 1".into()));
    }
    let mut f: Vec<BigUint> = Vec::with_capacity(n + 1);
    for j in 0..=n.min(k - 1) {
        f.push(BigUint::one() << j);
    }
    for j in k..=n {
        let sum = (1..=k).map(|i| &f[j - i]).sum();
        f.push(sum);
    }
    Ok(f[n].clone())
}

/// Minimum width of a maxterm of `SM`: the smallest number of fixed variables
/// in a partial assignment to the `(x, y)` coordinates that forces `SM = 0`.
///
/// Searches restriction support sets in increasing size, then assignments;
/// the first forcing assignment found yields the width. Requires `n + k <= 18`.
pub fn min_maxterm_width(n: usize, k: usize) -> Result<usize> {
    if k < 1 || k > n {
        return Err(Error::InvalidInput(format!("need 1 <= k <= n, got n={n} k={k}")));
    }
    let total = n + k;
    if total > 18 {
        return Err(Error::Capacity(format!(
            "restriction search supports n + k <= 18, got {total}"
        )));
    }

    // Truth table over all assignments; variable i < n is x_i, variable n + t is y_t.
    let table: Vec<bool> = (0..(1u64 << total))
        .map(|v| sm_packed(v & ((1 << n) - 1), n, v >> n, k))
        .collect();

    for width in 1..=total {
        for support in (0..total).combinations(width) {
            let free: Vec<usize> = (0..total).filter(|i| !support.contains(i)).collect();
            'assignment: for asg in 0..(1u64 << width) {
                let fixed = support
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (b, &var)| acc | (((asg >> b) & 1) << var));
                for completion in 0..(1u64 << free.len()) {
                    let full = free
                        .iter()
                        .enumerate()
                        .fold(fixed, |acc, (b, &var)| acc | (((completion >> b) & 1) << var));
                    if table[full as usize] {
                        continue 'assignment;
                    }
                }
                return Ok(width);
            }
        }
    }
    unreachable!("fixing all variables to any zero-input forces SM = 0");
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn zero_preimages_pinned() {
        assert_eq!(count_zero_preimages(3, 1).unwrap(), 2);
        assert_eq!(count_zero_preimages(1, 1).unwrap(), 2);
        // n = k: the zero-pairs are exactly the pairs with x != y.
        for n in 1..=8usize {
            let expected = (1u128 << n) * ((1u128 << n) - 1);
            assert_eq!(count_zero_preimages(n, n).unwrap(), expected);
        }
    }

    #[test]
    fn zero_preimages_capacity_and_input_errors() {
        assert!(matches!(count_zero_preimages(25, 2), Err(Error::Capacity(_))));
        assert!(matches!(count_zero_preimages(3, 4), Err(Error::InvalidInput(_))));
        assert!(matches!(count_zero_preimages(3, 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn avoiding_pinned() {
        assert_eq!(count_avoiding(3, 2).unwrap().to_u64().unwrap(), 5);
        assert_eq!(count_avoiding(0, 3).unwrap().to_u64().unwrap(), 1);
        assert_eq!(count_avoiding(5, 5).unwrap().to_u64().unwrap(), 31);
    }

    #[test]
    fn avoiding_matches_exhaustive_enumeration() {
        for n in 0..=16usize {
            for k in 1..=6usize {
                let mut direct = 0u64;
                for x in 0..(1u64 << n) {
                    let avoid = if k > n {
                        true
                    } else {
                        !sm_packed(x, n, 0, k)
                    };
                    if avoid {
                        direct += 1;
                    }
                }
                assert_eq!(
                    count_avoiding(n, k).unwrap().to_u64().unwrap(),
                    direct,
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn zero_preimages_dominated_by_window_count() {
        // A text has at most n - k + 1 distinct windows, so at least
        // 2^(n+k) - (n-k+1) 2^n pairs are zero-pairs.
        for n in 1..=10usize {
            for k in 1..=n {
                let z = count_zero_preimages(n, k).unwrap();
                let floor = (1u128 << (n + k)).saturating_sub(((n - k + 1) as u128) << n);
                assert!(z >= floor, "n={n} k={k}: {z} < {floor}");
                assert!(z < 1u128 << (n + k));
            }
        }
    }

    #[test]
    fn zero_preimages_dominate_avoiding_slice() {
        // The y = 0^k slice is a subset of the zero set.
        for n in 1..=10usize {
            for k in 1..=n {
                let z = count_zero_preimages(n, k).unwrap();
                let a = count_avoiding(n, k).unwrap().to_u128().unwrap();
                assert!(z >= a, "n={n} k={k}: {z} < {a}");
            }
        }
    }

    // Independent searcher for the cross-check: enumerates restrictions in a
    // different order (assignments outer, supports inner) and decides forcing
    // straight from the packed oracle instead of a precomputed table.
    fn maxterm_width_direct(n: usize, k: usize) -> usize {
        let total = n + k;
        for width in 1..=total {
            for asg in 0..(1u64 << width) {
                for support in (0..total).combinations(width) {
                    let fixed = support
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (b, &var)| acc | (((asg >> b) & 1) << var));
                    let free: Vec<usize> = (0..total).filter(|i| !support.contains(i)).collect();
                    let forcing = (0..(1u64 << free.len())).all(|completion| {
                        let full = free
                            .iter()
                            .enumerate()
                            .fold(fixed, |acc, (b, &var)| acc | (((completion >> b) & 1) << var));
                        !sm_packed(full & ((1 << n) - 1), n, full >> n, k)
                    });
                    if forcing {
                        return width;
                    }
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn maxterm_width_pinned_and_cross_checked() {
        assert_eq!(min_maxterm_width(1, 1).unwrap(), 2);
        assert_eq!(min_maxterm_width(2, 2).unwrap(), 2);
        assert_eq!(min_maxterm_width(4, 2).unwrap(), 4);
        for n in 1..=6usize {
            for k in 1..=n {
                assert_eq!(
                    min_maxterm_width(n, k).unwrap(),
                    maxterm_width_direct(n, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn maxterm_width_capacity_error() {
        assert!(matches!(min_maxterm_width(12, 8), Err(Error::Capacity(_))));
    }
}
