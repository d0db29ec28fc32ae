//! Dup-encoding of sparse Boolean functions into string-matching instances:
//! each bit doubled, a `01` delimiter appended, and the 1-preimages concatenated
//! in lexicographic order. `f(y) = 1` iff `SM(x_f, dup(y)) = 1`.

use crate::core::{sm_oracle, Pattern, Text};
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Double every bit of `a` and append `01`; output length `2l + 2`.
pub fn dup(a: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(2 * a.len() + 2);
    for &bit in a {
        out.push(bit);
        out.push(bit);
    }
    out.push(0);
    out.push(1);
    out
}

/// Odd-length variant: append `010` instead of `01`; output length `2l + 3`.
pub fn dup_odd(a: &[u8]) -> Vec<u8> {
    let mut out = dup(a);
    out.push(0);
    out
}

/// A Boolean function on `l` bits given by its set of 1-preimages.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseFunction {
    ell: usize,
    ones: BTreeSet<Vec<u8>>,
}

impl SparseFunction {
    pub fn new(ell: usize, ones: impl IntoIterator<Item = Vec<u8>>) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidInput("sparse functions need at least one input bit".into()));
        }
        let ones: BTreeSet<Vec<u8>> = ones.into_iter().collect();
        for a in &ones {
            if a.len() != ell {
                return Err(Error::InvalidInput(format!(
                    "preimage length {} differs from declared {ell}",
                    a.len()
                )));
            }
            if a.iter().any(|&b| b > 1) {
                return Err(Error::InvalidInput("preimages must be binary".into()));
            }
        }
        Ok(Self { ell, ones })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Number of 1-preimages.
    pub fn t(&self) -> usize {
        self.ones.len()
    }

    /// 1-preimages in lexicographic order.
    pub fn ones(&self) -> impl Iterator<Item = &Vec<u8>> {
        self.ones.iter()
    }

    pub fn eval(&self, y: &[u8]) -> Result<bool> {
        if y.len() != self.ell {
            return Err(Error::InvalidInput(format!(
                "input length {} differs from declared {}",
                y.len(),
                self.ell
            )));
        }
        Ok(self.ones.contains(y))
    }
}

/// The text `x_f`: concatenation of `dup(a)` over the 1-preimages of `f` in
/// lexicographic order, zero-padded at the end to `target_n` when given.
pub fn sparse_encode(f: &SparseFunction, target_n: Option<usize>) -> Result<Text> {
    if f.t() == 0 {
        return Err(Error::InvalidInput("sparse encoding needs at least one 1-preimage".into()));
    }
    let mut symbols = Vec::with_capacity(f.t() * (2 * f.ell + 2));
    for a in f.ones() {
        symbols.extend(dup(a));
    }
    if let Some(n) = target_n {
        if n < symbols.len() {
            return Err(Error::InvalidInput(format!(
                "target length {n} is below the natural encoding length {}",
                symbols.len()
            )));
        }
        symbols.resize(n, 0);
    }
    Text::binary(symbols)
}

/// Check `f(y) == SM(x_f, dup(y))` for every `y` in `{0,1}^l`. Requires `l <= 14`.
pub fn verify_sparse_reduction(f: &SparseFunction) -> Result<bool> {
    if f.ell > 14 {
        return Err(Error::Capacity(format!(
            "exhaustive sparse verification supports l <= 14, got {}",
            f.ell
        )));
    }
    let x_f = sparse_encode(f, None)?;
    for yv in 0..(1u64 << f.ell) {
        let y: Vec<u8> = (0..f.ell).map(|i| ((yv >> i) & 1) as u8).collect();
        let pattern = Pattern::binary(dup(&y))?;
        if f.eval(&y)? != sm_oracle(&x_f, &pattern)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dup_pinned_examples() {
        assert_eq!(dup(&[0, 1, 0]), vec![0, 0, 1, 1, 0, 0, 0, 1]);
        assert_eq!(dup(&[0]), vec![0, 0, 0, 1]);
        assert_eq!(dup_odd(&[0]), vec![0, 0, 0, 1, 0]);
    }

    #[test]
    fn dup_injective_and_length() {
        use std::collections::HashSet;
        for ell in 1..=6usize {
            let mut seen = HashSet::new();
            for v in 0..(1u64 << ell) {
                let a: Vec<u8> = (0..ell).map(|i| ((v >> i) & 1) as u8).collect();
                let d = dup(&a);
                assert_eq!(d.len(), 2 * ell + 2);
                assert!(seen.insert(d));
            }
        }
    }

    #[test]
    fn encode_lexicographic_and_padded() {
        let f = SparseFunction::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let x = sparse_encode(&f, None).unwrap();
        let mut expected = dup(&[0, 1]);
        expected.extend(dup(&[1, 0]));
        assert_eq!(x.symbols(), &expected[..]);

        let padded = sparse_encode(&f, Some(20)).unwrap();
        assert_eq!(padded.len(), 20);
        assert_eq!(&padded.symbols()[..12], &expected[..]);
        assert!(padded.symbols()[12..].iter().all(|&s| s == 0));
        assert!(verify_padding_preserves(&f));

        assert!(sparse_encode(&f, Some(5)).is_err());
    }

    fn verify_padding_preserves(f: &SparseFunction) -> bool {
        let x = sparse_encode(f, Some(40)).unwrap();
        (0..(1u64 << f.ell())).all(|yv| {
            let y: Vec<u8> = (0..f.ell()).map(|i| ((yv >> i) & 1) as u8).collect();
            let p = Pattern::binary(dup(&y)).unwrap();
            f.eval(&y).unwrap() == sm_oracle(&x, &p).unwrap()
        })
    }

    #[test]
    fn reduction_exhaustive_small_ell() {
        // Every f on up to 3 bits, every sparsity t >= 1.
        for ell in 1..=3usize {
            let points = 1u64 << ell;
            for mask in 1..(1u64 << points) {
                let ones: Vec<Vec<u8>> = (0..points)
                    .filter(|p| (mask >> p) & 1 == 1)
                    .map(|p| (0..ell).map(|i| ((p >> i) & 1) as u8).collect())
                    .collect();
                let f = SparseFunction::new(ell, ones).unwrap();
                assert!(verify_sparse_reduction(&f).unwrap(), "ell={ell} mask={mask:b}");
            }
        }
    }

    #[test]
    fn reduction_edge_cases() {
        // f identically 1.
        let ell = 3usize;
        let ones: Vec<Vec<u8>> = (0..(1u64 << ell))
            .map(|p| (0..ell).map(|i| ((p >> i) & 1) as u8).collect())
            .collect();
        let f = SparseFunction::new(ell, ones).unwrap();
        assert!(verify_sparse_reduction(&f).unwrap());

        // ones = {0^l}, y = 10^(l-1): no occurrence.
        let f = SparseFunction::new(4, vec![vec![0, 0, 0, 0]]).unwrap();
        let x = sparse_encode(&f, None).unwrap();
        let y = Pattern::binary(dup(&[1, 0, 0, 0])).unwrap();
        assert!(!sm_oracle(&x, &y).unwrap());

        assert!(matches!(
            verify_sparse_reduction(&SparseFunction::new(15, vec![vec![0; 15]]).unwrap()),
            Err(Error::Capacity(_))
        ));
    }
}
