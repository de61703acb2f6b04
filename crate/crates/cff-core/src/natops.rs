//! Low-level helpers on arbitrary-precision naturals shared across modules.

use num_bigint::BigUint;
use num_traits::{One, Pow, ToPrimitive, Zero};

/// `⌊n^(1/m)⌋` by binary search on `r` with exact integer powers; `m >= 1`.
pub(crate) fn floor_root(m: u64, n: &BigUint) -> BigUint {
    assert!(m >= 1, "floor_root needs m >= 1");
    if n.is_zero() || n.is_one() || m == 1 {
        return n.clone();
    }
    if m >= n.bits() {
        // 2^m > n for m >= bits(n), so the root is 1 for n >= 1.
        return BigUint::one();
    }
    // 2^ceil(bits/m) is a strict upper bound: (2^ceil(bits/m))^m >= 2^bits > n.
    let mut hi: BigUint = BigUint::one() << n.bits().div_ceil(m);
    let mut lo = BigUint::one();
    // Invariant: lo^m <= n < hi^m.
    while &lo + 1u32 < hi {
        let mid: BigUint = (&lo + &hi) >> 1;
        if Pow::pow(&mid, m) <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Iterated-product factorial.
pub(crate) fn factorial(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Upper bound on `log2(n!)`, used for capacity checks before computing `n!`.
pub(crate) fn factorial_bits_upper(n: &BigUint) -> BigUint {
    if n.bits() <= 1 {
        return BigUint::one();
    }
    n * n.bits()
}

pub(crate) fn to_u64_or(n: &BigUint, what: &str) -> crate::error::Result<u64> {
    n.to_u64()
        .ok_or_else(|| crate::error::Error::Range(format!("{what} does not fit in 64 bits: {n}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_root_matches_nth_root() {
        // num-bigint's nth_root is an independent implementation of the same
        // function; cross-check the binary search against it.
        for n in 0u64..500 {
            let n = BigUint::from(n);
            for m in 1u32..=8 {
                assert_eq!(floor_root(m as u64, &n), n.nth_root(m), "n={n} m={m}");
            }
        }
        let big = BigUint::from(10u32).pow(40u32);
        assert_eq!(floor_root(2, &big), BigUint::from(10u32).pow(20u32));
        assert_eq!(
            floor_root(2, &(&big - 1u32)),
            BigUint::from(10u32).pow(20u32) - 1u32
        );
        assert_eq!(floor_root(3, &(&big - 1u32)), (&big - 1u32).nth_root(3));
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(factorial(7), BigUint::from(5040u32));
    }
}
