//! Strings over a finite alphabet, the naive string-matching oracle, and period
//! machinery. The oracle is deliberately a plain quadratic scan, independent of
//! every other module, so it can serve as ground truth for all of them.

mod bits;
mod counting;

pub use bits::sm_packed;
pub use counting::{count_avoiding, count_zero_preimages, min_maxterm_width};

use crate::{Error, Result};
use std::fmt;

fn check_symbols(symbols: &[u8], alphabet_size: u8) -> Result<()> {
    if alphabet_size < 2 {
        return Err(Error::InvalidInput(format!(
            "alphabet size must be at least 2, got {alphabet_size}"
        )));
    }
    if let Some((pos, &sym)) = symbols.iter().enumerate().find(|(_, &s)| s >= alphabet_size) {
        return Err(Error::InvalidInput(format!(
            "symbol {sym} at position {pos} is outside alphabet [0, {alphabet_size})"
        )));
    }
    Ok(())
}

fn parse_digits(s: &str, alphabet_size: u8) -> Result<Vec<u8>> {
    s.chars()
        .enumerate()
        .map(|(pos, ch)| {
            let d = ch
                .to_digit(10)
                .ok_or_else(|| Error::InvalidInput(format!("non-digit character {ch:?} at position {pos}")))?;
            if d >= u32::from(alphabet_size) {
                return Err(Error::InvalidInput(format!(
                    "symbol {d} at position {pos} is outside alphabet [0, {alphabet_size})"
                )));
            }
            Ok(d as u8)
        })
        .collect()
}

fn fmt_symbols(symbols: &[u8], alphabet_size: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if alphabet_size <= 10 {
        for &s in symbols {
            write!(f, "{s}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = symbols.iter().map(|s| s.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// A string over the alphabet `[0, alphabet_size)`. May be empty.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Text {
    symbols: Vec<u8>,
    alphabet_size: u8,
}

impl Text {
    pub fn new(symbols: Vec<u8>, alphabet_size: u8) -> Result<Self> {
        check_symbols(&symbols, alphabet_size)?;
        Ok(Self { symbols, alphabet_size })
    }

    pub fn binary(symbols: Vec<u8>) -> Result<Self> {
        Self::new(symbols, 2)
    }

    /// Binary text from the low `len` bits of `bits`; bit `i` is the symbol at position `i`.
    pub fn from_bits(bits: u64, len: usize) -> Self {
        assert!(len <= 64, "packed view holds at most 64 symbols");
        let symbols = (0..len).map(|i| ((bits >> i) & 1) as u8).collect();
        Self { symbols, alphabet_size: 2 }
    }

    /// Packed view of a binary text; inverse of [`Text::from_bits`].
    pub fn to_bits(&self) -> Result<u64> {
        if self.alphabet_size != 2 {
            return Err(Error::InvalidInput("packed view requires a binary alphabet".into()));
        }
        if self.len() > 64 {
            return Err(Error::Capacity(format!("packed view holds at most 64 symbols, got {}", self.len())));
        }
        Ok(self
            .symbols
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &s)| acc | (u64::from(s) << i)))
    }

    pub fn from_digit_str(s: &str, alphabet_size: u8) -> Result<Self> {
        Self::new(parse_digits(s, alphabet_size)?, alphabet_size)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl fmt::Display for Text {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_symbols(&self.symbols, self.alphabet_size, f)
    }
}

/// A non-empty pattern over the same kind of alphabet as [`Text`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern {
    symbols: Vec<u8>,
    alphabet_size: u8,
}

impl Pattern {
    pub fn new(symbols: Vec<u8>, alphabet_size: u8) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidInput("pattern must be non-empty".into()));
        }
        check_symbols(&symbols, alphabet_size)?;
        Ok(Self { symbols, alphabet_size })
    }

    pub fn binary(symbols: Vec<u8>) -> Result<Self> {
        Self::new(symbols, 2)
    }

    pub fn from_bits(bits: u64, len: usize) -> Self {
        assert!(len >= 1, "pattern must be non-empty");
        assert!(len <= 64);
        let symbols = (0..len).map(|i| ((bits >> i) & 1) as u8).collect();
        Self { symbols, alphabet_size: 2 }
    }

    pub fn to_bits(&self) -> Result<u64> {
        self.as_text().to_bits()
    }

    pub fn from_digit_str(s: &str, alphabet_size: u8) -> Result<Self> {
        Self::new(parse_digits(s, alphabet_size)?, alphabet_size)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_text(&self) -> Text {
        Text { symbols: self.symbols.clone(), alphabet_size: self.alphabet_size }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_symbols(&self.symbols, self.alphabet_size, f)
    }
}

/// `true` iff `y` occurs as a contiguous substring of `x`.
///
/// Reference implementation: a naive scan over every window. Kept free of any
/// preprocessing so that its correctness is evident by inspection.
pub fn sm_oracle(x: &Text, y: &Pattern) -> Result<bool> {
    if x.alphabet_size != y.alphabet_size {
        return Err(Error::InvalidInput(format!(
            "alphabet mismatch: text has {}, pattern has {}",
            x.alphabet_size, y.alphabet_size
        )));
    }
    if y.len() > x.len() {
        return Err(Error::InvalidInput(format!(
            "pattern length {} exceeds text length {}",
            y.len(),
            x.len()
        )));
    }
    let n = x.len();
    let k = y.len();
    Ok((0..=n - k).any(|i| (0..k).all(|t| x.symbols[i + t] == y.symbols[t])))
}

/// The period orders of a string: `i` is an order iff the string matches itself
/// shifted by `i` positions on the overlap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodInfo {
    orders: Vec<usize>,
    primitive_order: Option<usize>,
}

impl PeriodInfo {
    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn has_order(&self, i: usize) -> bool {
        self.orders.binary_search(&i).is_ok()
    }

    /// Shortest order `<= n/2`, if any.
    pub fn primitive_order(&self) -> Option<usize> {
        self.primitive_order
    }
}

/// All period orders `i` in `[1, n-1]` of `x`, i.e. those with
/// `x[i..n] == x[0..n-i]`, together with the primitive order.
pub fn period_orders(x: &Text) -> Result<PeriodInfo> {
    let n = x.len();
    if n == 0 {
        return Err(Error::InvalidInput("period orders are defined for non-empty strings".into()));
    }
    let s = x.symbols();
    let orders: Vec<usize> = (1..n)
        .filter(|&i| (0..n - i).all(|j| s[j] == s[j + i]))
        .collect();
    let primitive_order = orders.iter().copied().find(|&i| i <= n / 2);
    Ok(PeriodInfo { orders, primitive_order })
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Self-test of the period machinery: for every pair of orders `(i, j)` with
/// `i + j <= |x|`, `gcd(i, j)` must also be an order.
pub fn divisor_structure_check(x: &Text) -> Result<bool> {
    let info = period_orders(x)?;
    let n = x.len();
    let orders = info.orders();
    for (a, &i) in orders.iter().enumerate() {
        for &j in &orders[a + 1..] {
            if i + j <= n && !info.has_order(gcd(i, j)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Second, structurally different oracle: compares each window from its last
    // symbol backwards. Used only to cross-check `sm_oracle`.
    fn sm_suffix_scan(x: &Text, y: &Pattern) -> bool {
        let (n, k) = (x.len(), y.len());
        assert!(k <= n);
        (0..=n - k).any(|i| (0..k).rev().all(|t| x.symbols()[i + t] == y.symbols()[t]))
    }

    #[test]
    fn oracle_pinned_examples() {
        let x = Text::from_digit_str("00110001", 2).unwrap();
        let y = Pattern::from_digit_str("1100", 2).unwrap();
        assert!(sm_oracle(&x, &y).unwrap());

        let s = Text::from_digit_str("010011", 2).unwrap();
        let p = Pattern::from_digit_str("010011", 2).unwrap();
        assert!(sm_oracle(&s, &p).unwrap());

        let x = Text::from_digit_str("000", 2).unwrap();
        let y = Pattern::from_digit_str("11", 2).unwrap();
        assert!(!sm_oracle(&x, &y).unwrap());
    }

    #[test]
    fn oracle_input_errors() {
        let x = Text::from_digit_str("01", 2).unwrap();
        let y = Pattern::from_digit_str("011", 2).unwrap();
        assert!(matches!(sm_oracle(&x, &y), Err(Error::InvalidInput(_))));

        let x3 = Text::from_digit_str("012", 3).unwrap();
        let y2 = Pattern::from_digit_str("01", 2).unwrap();
        assert!(matches!(sm_oracle(&x3, &y2), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn oracle_agrees_with_suffix_scan_exhaustively() {
        for n in 1..=10usize {
            for k in 1..=n {
                for xb in 0..(1u64 << n) {
                    let x = Text::from_bits(xb, n);
                    for yb in 0..(1u64 << k) {
                        let y = Pattern::from_bits(yb, k);
                        assert_eq!(sm_oracle(&x, &y).unwrap(), sm_suffix_scan(&x, &y));
                    }
                }
            }
        }
    }

    #[test]
    fn period_examples() {
        let info = period_orders(&Text::from_digit_str("0101", 2).unwrap()).unwrap();
        assert_eq!(info.orders(), &[2]);
        assert_eq!(info.primitive_order(), Some(2));

        let info = period_orders(&Text::from_digit_str("1111", 2).unwrap()).unwrap();
        assert_eq!(info.orders(), &[1, 2, 3]);
        assert_eq!(info.primitive_order(), Some(1));

        let info = period_orders(&Text::from_digit_str("0111", 2).unwrap()).unwrap();
        assert_eq!(info.primitive_order(), None);
    }

    #[test]
    fn period_orders_match_direct_definition() {
        for n in 1..=12usize {
            for xb in 0..(1u64 << n) {
                let x = Text::from_bits(xb, n);
                let info = period_orders(&x).unwrap();
                for i in 1..n {
                    let direct = (0..n - i).all(|j| x.symbols()[j] == x.symbols()[j + i]);
                    assert_eq!(info.has_order(i), direct, "x={x} i={i}");
                }
                // The primitive order, when present, divides every order <= n/2.
                if let Some(p) = info.primitive_order() {
                    for &i in info.orders() {
                        if i <= n / 2 {
                            assert_eq!(i % p, 0, "x={x} order {i} not a multiple of primitive {p}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn divisor_structure_holds_exhaustively() {
        assert!(divisor_structure_check(&Text::from_digit_str("010101", 2).unwrap()).unwrap());
        assert!(divisor_structure_check(&Text::from_digit_str("1", 2).unwrap()).unwrap());
        for n in 1..=14usize {
            for xb in 0..(1u64 << n) {
                let x = Text::from_bits(xb, n);
                assert!(divisor_structure_check(&x).unwrap(), "failed on {x}");
            }
        }
    }

    #[test]
    fn display_and_parse() {
        let x = Text::from_digit_str("0120", 3).unwrap();
        assert_eq!(x.to_string(), "0120");
        assert!(matches!(Text::from_digit_str("01a0", 2), Err(Error::InvalidInput(_))));
        assert!(matches!(Text::from_digit_str("012", 2), Err(Error::InvalidInput(_))));
        assert!(Pattern::new(vec![], 2).is_err());
    }
}
