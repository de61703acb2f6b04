//! Independent brute-force ground truth for every verified identity.
//!
//! Everything in here is deliberately naive: enumeration, trial division,
//! repeated halving, Pascal's triangle. The term-backed implementations are
//! checked against these, never the other way around.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypercube::HypercubeSpec;

/// Number of ones in the binary representation.
pub fn popcount(n: &BigUint) -> u64 {
    n.count_ones()
}

/// 2-adic valuation by repeated halving; rejects 0.
pub fn nu2_halving(n: &BigUint) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::Domain("nu2 is undefined at 0".into()));
    }
    let mut n = n.clone();
    let mut e = 0;
    while n.is_even() {
        n >>= 1;
        e += 1;
    }
    Ok(e)
}

pub fn euclid_gcd(a: &BigUint, b: &BigUint) -> BigUint {
    a.gcd(b)
}

/// Binomial coefficient by the multiplicative Pascal recurrence.
pub fn pascal_binom(a: u64, b: u64) -> BigUint {
    if b > a {
        return BigUint::zero();
    }
    let b = b.min(a - b);
    let mut acc = BigUint::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

pub fn factorial_iterated(n: u64) -> BigUint {
    crate::natops::factorial(n)
}

/// `G_r(q, t) = Σ_{j=0}^{t-1} j^r q^j` by direct summation.
pub fn g_series_naive(r: u64, q: &BigUint, t: u64) -> BigUint {
    let mut acc = BigUint::zero();
    let mut qj = BigUint::one();
    for j in 0..t {
        let jr = if r == 0 {
            BigUint::one()
        } else {
            num_traits::Pow::pow(&BigUint::from(j), r)
        };
        acc += jr * &qj;
        qj *= q;
    }
    acc
}

/// Prime factorization `n = Π p^e` by trial division, ascending primes.
pub fn trial_factorization(n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut x = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= x {
        if x.is_multiple_of(p) {
            let mut e = 0;
            while x.is_multiple_of(p) {
                x /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n > 1 && trial_factorization(n) == [(n, 1)]
}

/// Number of distinct prime divisors; 0 for n = 1.
pub fn omega_trial(n: u64) -> u64 {
    trial_factorization(n).len() as u64
}

pub fn is_squarefree(n: u64) -> bool {
    trial_factorization(n).iter().all(|&(_, e)| e == 1)
}

/// Largest s with s² | n, found by scanning every candidate square.
pub fn chi_largest_square_scan(n: u64) -> u64 {
    assert!(n >= 1);
    let mut best = 1;
    let mut s = 1u64;
    while s * s <= n {
        if n.is_multiple_of(s * s) {
            best = s;
        }
        s += 1;
    }
    best
}

/// `|{a ∈ [0, n-1] : a² ≡ 0 (mod n)}|`, which equals χ(n).
pub fn chi_residue_count(n: u64) -> u64 {
    assert!(n >= 1);
    (0..n)
        .filter(|&a| (a as u128 * a as u128).is_multiple_of(n as u128))
        .count() as u64
}

/// `|{a ∈ [0, 4n-1] : a² ≡ 1 (mod 4n)}|`, which equals `2^(ω(n)+1)`.
pub fn omega_residue_count(n: u64) -> u64 {
    assert!(n >= 1);
    let m = 4 * n as u128;
    (0..4 * n)
        .filter(|&a| ((a as u128 * a as u128) % m) == 1)
        .count() as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemLemma {
    SmallestDivisorSystem,
    GreatestPrimeSystem,
    ChiResidues,
    OmegaResidues,
}

/// Outcome of machine-checking one of the counting lemmas at a given n.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountReport {
    pub n: u64,
    pub lemma: SystemLemma,
    pub count: u64,
    pub predicted: u64,
    pub agrees: bool,
}

impl CountReport {
    fn new(n: u64, lemma: SystemLemma, count: u64, predicted: u64) -> CountReport {
        CountReport {
            n,
            lemma,
            count,
            predicted,
            agrees: count == predicted,
        }
    }
}

/// Counts solutions (a, b, c, d, e, f) ∈ ℕ⁶ of the system
///
/// ```text
/// (a+b+2)·c = n,    d·(a+b+1)! + 1 = e·n,    d + f = n
/// ```
///
/// Only a and b are free: writing D = a+b+2, the values c, e, f are forced
/// and d is pinned by its congruence class mod n together with d ≤ n. We
/// therefore scan D and d, counting (s+1) pairs (a, b) per feasible sum
/// s = a+b. The predicted count is spf(n) − 1 for composite n and n − 1 for
/// prime n, so that count + 1 recovers the smallest nontrivial divisor.
pub fn smallest_divisor_system_count(n: u64) -> Result<CountReport> {
    if !(2..=24).contains(&n) {
        return Err(Error::Range(format!(
            "smallest-divisor system oracle supports 2 <= n <= 24, got {n}"
        )));
    }
    let mut count = 0u64;
    for s in 0..=(n - 2) {
        let d_big = s + 2;
        if !n.is_multiple_of(d_big) {
            continue;
        }
        // (D-1)! mod n is all that the congruence d·(D-1)! ≡ -1 needs.
        let mut fact_mod = 1u64;
        for i in 2..d_big {
            fact_mod = (fact_mod * i) % n;
        }
        let solutions_for_d = (0..=n)
            .filter(|&d| (d % n * fact_mod + 1).is_multiple_of(n))
            .count() as u64;
        count += (s + 1) * solutions_for_d;
    }
    let predicted = if is_prime(n) {
        n - 1
    } else {
        trial_factorization(n)[0].0 - 1
    };
    Ok(CountReport::new(
        n,
        SystemLemma::SmallestDivisorSystem,
        count,
        predicted,
    ))
}

/// Counts solutions (a, b, c, d, e) ∈ ℕ⁵ of the system
///
/// ```text
/// (a+b+2)·c = n,    (a+b+1)! + 1 = d·(a+b+2),    ((a+b+2)!)^n = n·e
/// ```
///
/// With D = a+b+2, the second equation is Wilson's primality criterion for D
/// and the third asks n | (D!)^n. The latter is decided by comparing prime
/// exponents (Legendre counting) instead of materializing (D!)^n, which is
/// astronomically large near the range ceiling.
pub fn greatest_prime_system_count(n: u64) -> Result<CountReport> {
    if !(2..=20).contains(&n) {
        return Err(Error::Range(format!(
            "greatest-prime system oracle supports 2 <= n <= 20, got {n}"
        )));
    }
    let mut count = 0u64;
    for d_big in 2..=n {
        if !n.is_multiple_of(d_big) {
            continue;
        }
        // Wilson: D | (D-1)! + 1 iff D is prime.
        let mut fact_mod = 1u64;
        for i in 2..d_big {
            fact_mod = (fact_mod * i) % d_big;
        }
        if !(fact_mod + 1).is_multiple_of(d_big) {
            continue;
        }
        if !divides_factorial_power(n, d_big, n) {
            continue;
        }
        count += d_big - 1; // (s+1) pairs for s = D-2
    }
    let predicted = if is_prime(n) {
        n - 1
    } else {
        trial_factorization(n).last().unwrap().0 - 1
    };
    Ok(CountReport::new(
        n,
        SystemLemma::GreatestPrimeSystem,
        count,
        predicted,
    ))
}

/// Does n divide (d!)^exp? Checked prime by prime via Legendre's formula.
fn divides_factorial_power(n: u64, d: u64, exp: u64) -> bool {
    trial_factorization(n).into_iter().all(|(p, alpha)| {
        let mut nu_p = 0u64;
        let mut pk = p;
        while pk <= d {
            nu_p += d / pk;
            match pk.checked_mul(p) {
                Some(next) => pk = next,
                None => break,
            }
        }
        nu_p.saturating_mul(exp) >= alpha as u64
    })
}

/// Counts zeros of the spec's exponential polynomial by walking every lattice
/// point of the box. Caps the box volume at 10⁷ points.
pub fn enumerate_box_zeros(spec: &HypercubeSpec) -> Result<u64> {
    let volume = spec
        .box_volume()
        .filter(|&v| v <= 10_000_000)
        .ok_or_else(|| {
            Error::Range(format!(
                "box {}^{} is too large to enumerate",
                spec.t, spec.k
            ))
        })?;
    let mut point = vec![0u64; spec.k];
    let mut zeros = 0u64;
    for _ in 0..volume {
        if spec.eval_f(&point).is_zero() {
            zeros += 1;
        }
        for slot in point.iter_mut() {
            *slot += 1;
            if *slot < spec.t {
                break;
            }
            *slot = 0;
        }
    }
    Ok(zeros)
}

/// χ(n) through the prime factorization: Π p^⌊e/2⌋. A second route to the
/// same value, independent of both the square scan and the hypercube term.
pub fn chi_from_factorization(n: u64) -> u64 {
    assert!(n >= 1);
    trial_factorization(n)
        .into_iter()
        .map(|(p, e)| p.pow(e / 2))
        .product()
}

/// Signed evaluation helper for randomized hypercube specs.
pub fn eval_exponential_polynomial(spec: &HypercubeSpec, point: &[u64]) -> BigInt {
    spec.eval_f(point)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_oracles() {
        assert_eq!(popcount(&BigUint::from(28u32)), 3);
        assert_eq!(nu2_halving(&BigUint::from(12u32)).unwrap(), 2);
        assert_eq!(nu2_halving(&BigUint::from(64u32)).unwrap(), 6);
        assert_eq!(nu2_halving(&BigUint::from(1u32)).unwrap(), 0);
        assert!(nu2_halving(&BigUint::zero()).is_err());
        assert_eq!(pascal_binom(5, 2), BigUint::from(10u32));
        assert_eq!(pascal_binom(8, 5), BigUint::from(56u32));
        assert_eq!(pascal_binom(10, 3), BigUint::from(120u32));
        assert_eq!(pascal_binom(4, 0), BigUint::one());
        assert_eq!(factorial_iterated(5), BigUint::from(120u32));
        assert_eq!(
            g_series_naive(0, &BigUint::from(2u32), 5),
            BigUint::from(31u32)
        );
        assert_eq!(g_series_naive(4, &BigUint::one(), 3), BigUint::from(17u32));
    }

    #[test]
    fn factorization_and_derived() {
        assert_eq!(trial_factorization(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(omega_trial(10), 2);
        assert_eq!(omega_trial(1), 0);
        assert_eq!(omega_trial(30), 3);
        assert!(is_prime(7) && !is_prime(1) && !is_prime(9));
        assert!(is_squarefree(30) && !is_squarefree(12));
        assert_eq!(chi_largest_square_scan(10), 1);
        assert_eq!(chi_largest_square_scan(50), 5);
        assert_eq!(chi_largest_square_scan(16), 4);
        assert_eq!(chi_from_factorization(50), 5);
        assert_eq!(chi_from_factorization(16), 4);
    }

    #[test]
    fn residue_counts() {
        assert_eq!(chi_residue_count(4), 2); // {0, 2}
        assert_eq!(chi_residue_count(7), 1); // {0}
        assert_eq!(chi_residue_count(50), 5);
        assert_eq!(omega_residue_count(1), 2); // {1, 3} in Z_4
        assert_eq!(omega_residue_count(10), 8);
        assert_eq!(omega_residue_count(12), 8);
    }

    #[test]
    fn system_counts_match_lemmas() {
        let r = smallest_divisor_system_count(15).unwrap();
        assert_eq!((r.count, r.predicted, r.agrees), (2, 2, true));
        let r = smallest_divisor_system_count(7).unwrap();
        assert_eq!((r.count, r.predicted), (6, 6));
        let r = smallest_divisor_system_count(4).unwrap();
        assert_eq!((r.count, r.predicted), (1, 1));
        let r = greatest_prime_system_count(12).unwrap();
        assert_eq!((r.count, r.predicted), (2, 2));
        let r = greatest_prime_system_count(5).unwrap();
        assert_eq!((r.count, r.predicted), (4, 4));
        let r = greatest_prime_system_count(9).unwrap();
        assert_eq!((r.count, r.predicted), (2, 2));
        assert!(smallest_divisor_system_count(25).is_err());
        assert!(greatest_prime_system_count(21).is_err());
    }
}
