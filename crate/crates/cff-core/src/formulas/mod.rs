//! Value-level implementations of the closed-form building blocks: Hamming
//! weight, 2-adic valuation, gcd, two binomial formulas, factorial, the block
//! encoder δ, generalized geometric series, and the two-variable power
//! identity. Each one evaluates the corresponding elementary formula with
//! exact arbitrary-precision arithmetic under an explicit bit ceiling.

pub mod emit;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::budget::BitBudget;
use crate::error::{Error, Result};
use crate::natops;

pub use emit::{emit_term, FormulaId};

/// Which pipeline computes a value.
///
/// `FullTerm` evaluates the complete closed-form expression. `Layered` keeps
/// the term-shaped pipeline but lets named subcalls (inner binomial, final
/// 2-adic valuation) run natively where the full expansion is infeasible.
/// `Native` is the conventional algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalBackend {
    FullTerm,
    Layered,
    Native,
}

impl EvalBackend {
    pub fn name(self) -> &'static str {
        match self {
            EvalBackend::FullTerm => "full-term",
            EvalBackend::Layered => "layered",
            EvalBackend::Native => "native",
        }
    }
}

impl std::fmt::Display for EvalBackend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn pow2(bits: u64) -> BigUint {
    BigUint::one() << bits
}

fn mersenne(bits: u64) -> BigUint {
    pow2(bits) - 1u32
}

/// Hamming weight by popcount.
pub fn hw(n: &BigUint) -> u64 {
    n.count_ones()
}

/// Hamming weight as ν₂ of a central binomial coefficient (Kummer's theorem):
/// `HW(n) = ν₂(C(2n, n))`.
pub fn hw_kummer(n: u64) -> Result<u64> {
    if n == 0 {
        return Ok(0);
    }
    crate::oracles::nu2_halving(&crate::oracles::pascal_binom(2 * n, n))
}

/// 2-adic valuation. The term backends evaluate
/// `⌊(gcd(n, 2^n)^(n+1) mod (2^(n+1)-1)²) / (2^(n+1)-1)⌋` exactly, with the
/// inner gcd computed by Euclid (its own closed form is verified separately
/// by [`gcd_term`]). The native backend counts trailing zeros.
pub fn nu2(n: &BigUint, backend: EvalBackend, budget: BitBudget) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::Domain("nu2 is undefined at 0".into()));
    }
    match backend {
        EvalBackend::Native => Ok(n.trailing_zeros().unwrap_or(0)),
        EvalBackend::FullTerm | EvalBackend::Layered => {
            // Dominant intermediate: gcd(n, 2^n)^(n+1) at up to (n+1)·bits(n) bits.
            let np1 = n + 1u32;
            budget.check_big(&(&np1 * n.bits().max(2)))?;
            let np1 = natops::to_u64_or(&np1, "nu2 exponent")?;
            let g = n.gcd(&pow2(np1 - 1));
            let m = mersenne(np1);
            let m2 = &m * &m;
            let v = Pow::pow(&g, np1) % m2 / m;
            natops::to_u64_or(&v, "nu2 result")
        }
    }
}

/// gcd via `(⌊2^(ab(ab+a+b)) / ((2^(a²b)-1)(2^(ab²)-1))⌋ mod 2^(ab)) - 1`.
///
/// The extracted base-2^(ab) digit counts lattice points on a segment, which
/// is gcd(a, b) + 1; at (1, 1) that count equals the base and the digit
/// overflows, so the degenerate point is answered directly.
pub fn gcd_term(a: &BigUint, b: &BigUint, budget: BitBudget) -> Result<BigUint> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Domain("gcd term needs a, b >= 1".into()));
    }
    if a.is_one() && b.is_one() {
        return Ok(BigUint::one());
    }
    let ab = a * b;
    let required = &ab * (&ab + a + b);
    budget.check_big(&required)?;
    let e = required.to_u64().expect("checked against budget");
    let ab = ab.to_u64().expect("smaller than the checked exponent");
    let a2b = (a * a * b)
        .to_u64()
        .expect("smaller than the checked exponent");
    let ab2 = (a * b * b)
        .to_u64()
        .expect("smaller than the checked exponent");
    let den = mersenne(a2b) * mersenne(ab2);
    let digit = (pow2(e) / den) % pow2(ab);
    Ok(digit - 1u32)
}

/// Binomial coefficient via `⌊(2^a+1)^a / 2^(ab)⌋ mod 2^a`.
///
/// The base-2^a digits of (2^a+1)^a are exactly the binomial coefficients of
/// row a for a >= 1; at a = 0 the digit width collapses and the value is
/// answered directly.
pub fn binom1(a: u64, b: u64, budget: BitBudget) -> Result<BigUint> {
    check_binom_args(a, b)?;
    if a == 0 {
        return Ok(BigUint::one());
    }
    budget.check(u128::from(a) * (u128::from(a) + 1))?;
    let p: BigUint = Pow::pow(&(pow2(a) + 1u32), a);
    Ok((p >> (a * b)) % pow2(a))
}

/// Binomial coefficient via the Fibonacci-style expansion
/// `⌊2^(2(a+2)((a+1)²+b+1)) / (2^(2(a+2)²) - 2^(2(a+2)) - 1)⌋ mod 2^(2(a+2))`.
pub fn binom2(a: u64, b: u64, budget: BitBudget) -> Result<BigUint> {
    check_binom_args(a, b)?;
    let l = 2 * (a + 2);
    let e = u128::from(l) * (u128::from(a + 1) * u128::from(a + 1) + u128::from(b) + 1);
    budget.check(e)?;
    let e = e as u64;
    let den = pow2(l * (a + 2)) - pow2(l) - 1u32;
    Ok((pow2(e) / den) % pow2(l))
}

fn check_binom_args(a: u64, b: u64) -> Result<()> {
    if b > a {
        return Err(Error::Domain(format!(
            "binomial needs 0 <= b <= a, got ({a}, {b})"
        )));
    }
    Ok(())
}

/// Largest n the full-term factorial chain supports: the inner binomial runs
/// at a = 8^(n²), which is ~16.8M bits of work already at n = 2.
pub const FACTORIAL_FULL_TERM_MAX_N: u64 = 2;
/// Largest n the layered factorial pipeline is provisioned for.
pub const FACTORIAL_LAYERED_MAX_N: u64 = 8;

/// Factorial via `n! = ⌊8^(n³) / C(8^(n²), n)⌋`.
///
/// `FullTerm` computes the inner binomial with [`binom1`] at a = 8^(n²)
/// (n <= 2); `Layered` substitutes an exact native binomial so the outer
/// floor-division structure is verified up to n = 8 independently of the
/// inner formula; `Native` is the iterated product.
pub fn factorial_term(n: u64, backend: EvalBackend) -> Result<BigUint> {
    match backend {
        EvalBackend::Native => Ok(natops::factorial(n)),
        EvalBackend::FullTerm => {
            if n > FACTORIAL_FULL_TERM_MAX_N {
                // The inner binomial would run at a = 8^(n²), i.e. ~2^(6n²)
                // bits of work; saturate the estimate for absurd n.
                let e = (6u128 * u128::from(n) * u128::from(n)).min(1_000_000) as u64;
                return Err(Error::Capacity {
                    required_bits: BigUint::one() << e,
                    budget_bits: 16_800_000,
                });
            }
            let a = 8u64.pow((n * n) as u32);
            let binom = binom1(a, n, BitBudget::new(16_800_000))?;
            Ok(pow2(3 * n * n * n) / binom)
        }
        EvalBackend::Layered => {
            if n > FACTORIAL_LAYERED_MAX_N {
                let cubed = 3u128 * u128::from(n) * u128::from(n) * u128::from(n);
                return Err(Error::Capacity {
                    required_bits: BigUint::from(cubed),
                    budget_bits: 3 * FACTORIAL_LAYERED_MAX_N.pow(3),
                });
            }
            let a = BigUint::from(8u32).pow((n * n) as u32);
            let binom = binom_big(&a, n);
            Ok(pow2(3 * n * n * n) / binom)
        }
    }
}

/// Exact C(a, b) for big a and small b, by the multiplicative recurrence.
fn binom_big(a: &BigUint, b: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..b {
        acc = acc * (a - i) / (i + 1);
    }
    acc
}

/// Block encoder `δ(a, b) = (2^b - 1)(2^b - a + 1)` for 0 <= a < 2^b.
///
/// Its Hamming weight is 2b when a = 0 and b otherwise, which is what lets
/// the concatenated blocks of M count zeros.
pub fn delta(a: &BigUint, b: u64) -> Result<BigUint> {
    let p = pow2(b);
    if *a >= p {
        return Err(Error::Domain(format!(
            "delta needs a < 2^b, got a = {a}, b = {b}"
        )));
    }
    Ok(mersenne(b) * (&p + 1u32 - a))
}

/// `G_r(q, t) = Σ_{j<t} j^r q^j` with closed forms for r ∈ {0, 1, 2, 4} and
/// naive summation for every other r; q >= 1.
pub fn g_series(r: u64, q: &BigUint, t: u64) -> Result<BigUint> {
    if q.is_zero() {
        return Err(Error::Domain("G_r needs q >= 1".into()));
    }
    if !matches!(r, 0 | 1 | 2 | 4) {
        return Ok(crate::oracles::g_series_naive(r, q, t));
    }
    if t == 0 {
        return Ok(BigUint::zero());
    }
    if t == 1 {
        // Only the j = 0 summand, which is 0^r·q^0.
        return Ok(if r == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        });
    }
    if q.is_one() {
        // Faulhaber sums of j^r over j < t.
        let t = BigUint::from(t);
        let v = match r {
            0 => t,
            1 => (&t - 1u32) * &t / 2u32,
            2 => (&t - 1u32) * &t * (2u32 * &t - 1u32) / 6u32,
            _ => {
                (&t - 1u32) * &t * (2u32 * &t - 1u32) * (3u32 * &t * &t - 3u32 * &t - 1u32) / 30u32
            }
        };
        return Ok(v);
    }
    let q = BigInt::from(q.clone());
    let t1 = t - 1;
    let qp = |e: u64| Pow::pow(&q, e);
    let big = |v: u64| BigInt::from(v);
    let numerator: BigInt = match r {
        0 => qp(t) - 1,
        1 => &q * (big(t1) * qp(t) - big(t) * qp(t1) + 1),
        2 => {
            let t1b = big(t1);
            &q * (&t1b * &t1b * qp(t1 + 2) - (2u32 * &t1b * &t1b + 2u32 * &t1b - 1) * qp(t1 + 1)
                + (&t1b + 1) * (&t1b + 1) * qp(t1)
                - &q
                - 1)
        }
        _ => {
            let t1b = big(t1);
            let p2 = &t1b * &t1b;
            let p3 = &p2 * &t1b;
            let p4 = &p3 * &t1b;
            let c1 = -4 * &p4 - 12 * &p3 - 6 * &p2 + 12 * &t1b + 11;
            let c2 = 6 * &p4 + 12 * &p3 - 6 * &p2 - 12 * &t1b + 11;
            let c3 = -4 * &p4 - 4 * &p3 + 6 * &p2 - 4 * &t1b + 1;
            let c4 = (&t1b + 1) * (&t1b + 1) * (&t1b + 1) * (&t1b + 1);
            &q * (&p4 * qp(t1 + 4)
                + c1 * qp(t1 + 1)
                + c2 * qp(t1 + 2)
                + c3 * qp(t1 + 3)
                + c4 * qp(t1)
                - qp(3)
                - 11 * qp(2)
                - 11 * &q
                - 1)
        }
    };
    let denominator = Pow::pow(&(&q - 1), r + 1);
    let (quot, rem) = numerator.div_rem(&denominator);
    if !rem.is_zero() || quot.is_negative() {
        return Err(Error::Inconsistent(format!(
            "G_{r}({q}, {t}) closed form did not divide exactly"
        )));
    }
    Ok(quot.to_biguint().expect("non-negative"))
}

/// Two-variable exponentiation: `x^m = 2^(3m²x) mod (2^(3mx) ∸ x)` for m >= 1.
/// At x = 0 the right side is 1 mod 1 = 0, matching 0^m.
pub fn pow_lemma(x: &BigUint, m: u64, budget: BitBudget) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::Domain("pow lemma needs m >= 1".into()));
    }
    let required = BigUint::from(3u8) * m * m * x;
    budget.check_big(&required)?;
    if x.is_zero() {
        return Ok(BigUint::zero());
    }
    let x64 = natops::to_u64_or(x, "pow lemma base")?;
    let modulus = pow2(3 * m * x64) - x;
    Ok(pow2(required.to_u64().expect("checked against budget")) % modulus)
}
