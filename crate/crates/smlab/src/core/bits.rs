//! Bit-packed view of binary strings for exhaustive loops. Must agree with the
//! unpacked [`sm_oracle`](super::sm_oracle); the round-trip tests below pin that.

/// `SM` on bit-packed binary inputs: bit `i` of `x`/`y` is the symbol at position `i`.
/// Requires `1 <= k <= n <= 64`.
pub fn sm_packed(x: u64, n: usize, y: u64, k: usize) -> bool {
    debug_assert!(k >= 1 && k <= n && n <= 64);
    let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    (0..=n - k).any(|i| ((x >> i) ^ y) & mask == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{sm_oracle, Pattern, Text};
    use proptest::prelude::*;

    #[test]
    fn packed_agrees_with_oracle_exhaustively() {
        for n in 1..=10usize {
            for k in 1..=n {
                for xb in 0..(1u64 << n) {
                    let x = Text::from_bits(xb, n);
                    for yb in 0..(1u64 << k) {
                        let y = Pattern::from_bits(yb, k);
                        assert_eq!(sm_packed(xb, n, yb, k), sm_oracle(&x, &y).unwrap());
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn packed_and_unpacked_views_round_trip(bits in any::<u64>(), n in 0usize..=64) {
            let bits = if n == 64 { bits } else { bits & ((1u64 << n) - 1) };
            let x = Text::from_bits(bits, n);
            prop_assert_eq!(x.len(), n);
            prop_assert_eq!(x.to_bits().unwrap(), bits);
        }

        #[test]
        fn packed_oracle_matches_on_random_inputs(xb in any::<u64>(), yb in any::<u64>(), n in 1usize..=24, kf in any::<u16>()) {
            let k = 1 + (kf as usize) % n;
            let xb = xb & ((1u64 << n) - 1);
            let yb = yb & ((1u64 << k) - 1);
            let x = Text::from_bits(xb, n);
            let y = Pattern::from_bits(yb, k);
            prop_assert_eq!(sm_packed(xb, n, yb, k), sm_oracle(&x, &y).unwrap());
        }
    }
}
