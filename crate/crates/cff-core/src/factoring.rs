//! Non-trivial divisors of composite integers from the closed-form pieces:
//! floor roots, the divisor formulas T(n) and U(n), the root-bound check on
//! squarefree composites, the nine-variable witness equation behind the
//! two-variable power identity, and the conjectured root formula.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive};

use crate::budget::BitBudget;
use crate::error::{Error, Result};
use crate::formulas::EvalBackend;
use crate::hypercube;
use crate::natops;
use crate::oracles;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorMethod {
    T,
    U,
}

impl std::fmt::Display for FactorMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FactorMethod::T => "T",
            FactorMethod::U => "U",
        })
    }
}

/// Outcome of one divisor computation. `backend` records how χ and ω were
/// computed; root, factorial and gcd always run natively (a full-term gcd at
/// the sizes T(n) feeds it is billions of bits). For prime n the formulas
/// return n itself, reported with `proper = false` rather than an error.
#[derive(Debug, Clone)]
pub struct FactorReport {
    pub n: u64,
    pub method: FactorMethod,
    pub divisor: u64,
    pub cofactor: u64,
    pub chi: u64,
    pub omega: u64,
    pub root: u64,
    pub backend: EvalBackend,
    pub elapsed: Duration,
    pub proper: bool,
}

/// `⌊n^(1/m)⌋`: the r with r^m <= n < (r+1)^m, by binary search on exact
/// integer powers. The 0-th root is rejected.
pub fn floor_root(m: u64, n: &BigUint) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::Domain(
            "floor_root: the 0-th root is undefined".into(),
        ));
    }
    Ok(natops::floor_root(m, n))
}

/// What came out of evaluating the conjectured root formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootConjectureOutcome {
    Agrees(BigUint),
    /// The conjecture is open; a disagreement is data, not a bug.
    Mismatch {
        conjectured: BigInt,
        exact: BigUint,
    },
}

/// Evaluates the conjectured closed form
///
/// ```text
/// ⌊n^(1/m)⌋ = ⌊ (n^(2nm)+1)^(2nm+1) mod (n^(2nm²)-n)
///             / (n^(2nm)+1)^(2nm)   mod (n^(2nm²)-n)  - 1 ⌋
/// ```
///
/// under its stated hypotheses (n > 2, ⌊log₂ n⌋ + 1 >= m > 1, n not a
/// perfect m-th power) and compares it against the exact [`floor_root`].
/// Never asserts the conjecture: a disagreement comes back as a report.
pub fn floor_root_conjecture(m: u64, n: u64, budget: BitBudget) -> Result<RootConjectureOutcome> {
    if n <= 2 {
        return Err(Error::Domain(format!(
            "conjecture hypothesis violated: n > 2 (n = {n})"
        )));
    }
    if m <= 1 {
        return Err(Error::Domain(format!(
            "conjecture hypothesis violated: m > 1 (m = {m})"
        )));
    }
    let n_big = BigUint::from(n);
    if m > n_big.bits() {
        return Err(Error::Domain(format!(
            "conjecture hypothesis violated: m <= floor(log2(n)) + 1 (m = {m}, n = {n})"
        )));
    }
    let exact = natops::floor_root(m, &n_big);
    if Pow::pow(&exact, m) == n_big {
        return Err(Error::Domain(format!(
            "conjecture hypothesis violated: {n} is a perfect {m}-th power"
        )));
    }

    let e_mod = 2u128 * u128::from(n) * u128::from(m) * u128::from(m);
    budget.check(e_mod.saturating_mul(u128::from(n_big.bits())))?;
    let e_mod = e_mod as u64;
    let e_base = 2 * n * m;
    let modulus = Pow::pow(&n_big, e_mod) - &n_big;
    let base = Pow::pow(&n_big, e_base) + 1u32; // n^(2nm) < n^(2nm²) - n for m >= 2
    let n2 = base.modpow(&BigUint::from(e_base), &modulus);
    let n1 = &n2 * base % &modulus;
    // floor(N1/N2 - 1) = floor((N1 - N2) / N2), which can dip negative.
    let conjectured = (BigInt::from(n1) - BigInt::from(n2.clone())).div_floor(&BigInt::from(n2));
    if conjectured == BigInt::from(exact.clone()) {
        Ok(RootConjectureOutcome::Agrees(exact))
    } else {
        Ok(RootConjectureOutcome::Mismatch { conjectured, exact })
    }
}

/// `T(n) = gcd(n/χ(n), ⌊n^(1/ω(n))⌋!)` — a non-trivial divisor whenever n is
/// composite.
pub fn factor_t(n: u64, backend: EvalBackend, budget: BitBudget) -> Result<FactorReport> {
    factor_with(n, FactorMethod::T, backend, budget)
}

/// `U(n) = (2 ∸ χ(n))·gcd(n, ⌊n^(1/ω(n))⌋!) + (1 ∸ (2 ∸ χ(n)))·χ(n)`: the
/// gcd branch exactly when χ(n) = 1 (n squarefree), χ(n) itself otherwise.
pub fn factor_u(n: u64, backend: EvalBackend, budget: BitBudget) -> Result<FactorReport> {
    factor_with(n, FactorMethod::U, backend, budget)
}

fn factor_with(
    n: u64,
    method: FactorMethod,
    backend: EvalBackend,
    budget: BitBudget,
) -> Result<FactorReport> {
    if n < 2 {
        return Err(Error::Domain(format!("factoring needs n >= 2, got {n}")));
    }
    let started = Instant::now();
    let chi = hypercube::chi(n, backend, budget)?;
    let mut omega = hypercube::omega(n, backend, budget)?;
    if omega == 0 {
        // Only reachable for n = 1; kept for parity with the library use of
        // the root expression, where the 0-th root must not occur.
        omega = 1;
    }
    let root_big = natops::floor_root(omega, &BigUint::from(n));
    let root = root_big.to_u64().expect("root of a u64 fits");
    // Always >= 1: the gcd argument n/chi is positive and the chi branch
    // only fires with chi >= 2.
    let divisor = match method {
        FactorMethod::T => gcd_with_factorial(n / chi, root),
        FactorMethod::U => {
            let squarefree_weight = 2u64.saturating_sub(chi); // 1 iff chi = 1
            if squarefree_weight == 1 {
                gcd_with_factorial(n, root)
            } else {
                chi
            }
        }
    };
    Ok(FactorReport {
        n,
        method,
        divisor,
        cofactor: n / divisor,
        chi,
        omega,
        root,
        backend,
        elapsed: started.elapsed(),
        proper: divisor > 1 && divisor < n && n.is_multiple_of(divisor),
    })
}

/// `gcd(a, r!)` without materializing r!: by Euclid, gcd(a, r!) =
/// gcd(a, r! mod a), and r! mod a accumulates in O(r) modular products.
fn gcd_with_factorial(a: u64, r: u64) -> u64 {
    if a <= 1 {
        return a;
    }
    let mut fact_mod = 1u128;
    let a_wide = u128::from(a);
    for i in 2..=u128::from(r) {
        fact_mod = fact_mod * (i % a_wide) % a_wide;
        if fact_mod == 0 {
            return a; // a | r!, so the gcd is a itself
        }
    }
    (fact_mod as u64).gcd(&a)
}

/// For squarefree composite n with primes p₁ < … < pₖ and k = ω(n):
/// p₁ <= ⌊n^(1/k)⌋ < pₖ. This ordering is what makes gcd(n, root!) proper.
pub fn root_bound_check(n: u64) -> Result<bool> {
    let factors = oracles::trial_factorization(n);
    if factors.len() < 2 || factors.iter().any(|&(_, e)| e > 1) {
        return Err(Error::Domain(format!(
            "root bound check needs a squarefree composite, got {n}"
        )));
    }
    let k = factors.len() as u64;
    let root = natops::floor_root(k, &BigUint::from(n));
    let p_min = BigUint::from(factors.first().unwrap().0);
    let p_max = BigUint::from(factors.last().unwrap().0);
    Ok(p_min <= root && root < p_max)
}

/// Constructs, for every x with x^m <= n, the unique witness tuple
/// (x, y, z, w, g, s, r, q, d) of the nine-variable sum-of-squares encoding
/// of `x^m = r`:
///
/// ```text
/// (2^(3mx) - z)² + (2^(3mx)q - g)² + (w - xq)² + (2^(3m²x) - s)²
///   + (2^n - 2^(r+y))² + (2^(s+w) - 2^(g+r))² + (2^z - 2^(x+r+d+1))² = 0
/// ```
///
/// with z = 2^(3mx), s = 2^(3m²x), q and r the quotient and remainder of s
/// by (2^(3mx) - x), w = xq, g = zq, y = n - x^m, d = 2^(3mx) - x - r - 1.
/// Verifies each square vanishes (squares under an exponential via equality
/// of exponents, since 2^a = 2^b iff a = b) and that every component lies in
/// the cube [0, 2^(6n³m²)]⁹. Returns the witness count, which must equal
/// ⌊n^(1/m)⌋ + 1.
pub fn witness_check_pow_equation(m: u64, n: u64) -> Result<u64> {
    if !(1..=3).contains(&m) || !(1..=20).contains(&n) {
        return Err(Error::Range(format!(
            "witness check supports 1 <= m <= 3 and 1 <= n <= 20, got m = {m}, n = {n}"
        )));
    }
    let fail = |x: u64, square: &str| {
        Err(Error::PropertyViolation(format!(
            "witness at x = {x}: square {square} does not vanish"
        )))
    };
    let cube_bound = BigUint::one() << (6 * n * n * n * m * m);
    let mut count = 0u64;
    for x in 0u64.. {
        let x_pow_m = x
            .checked_pow(m as u32)
            .expect("x^m stays tiny on this range");
        if x_pow_m > n {
            break;
        }
        let z = BigUint::one() << (3 * m * x);
        let s = BigUint::one() << (3 * m * m * x);
        let divisor = &z - x;
        let (q, r) = s.div_rem(&divisor);
        let w = q.clone() * x;
        let g = &z * &q;
        let y = n - x_pow_m;
        let d = &divisor - &r - 1u32;

        if BigUint::one() << (3 * m * x) != z {
            return fail(x, "(2^(3mx) - z)^2");
        }
        if (BigUint::one() << (3 * m * x)) * &q != g {
            return fail(x, "(2^(3mx)q - g)^2");
        }
        if w != &q * x {
            return fail(x, "(w - xq)^2");
        }
        if BigUint::one() << (3 * m * m * x) != s {
            return fail(x, "(2^(3m²x) - s)^2");
        }
        // y was defined from x^m, r from the division: their agreement in
        // r + y = n is exactly the power identity x^m = r.
        if &r + y != BigUint::from(n) {
            return fail(x, "(2^n - 2^(r+y))^2");
        }
        if &s + &w != &g + &r {
            return fail(x, "(2^(s+w) - 2^(g+r))^2");
        }
        if z != BigUint::from(x) + &r + &d + 1u32 {
            return fail(x, "(2^z - 2^(x+r+d+1))^2");
        }
        let components = [BigUint::from(x), BigUint::from(y), z, w, g, s, r, q, d];
        for (name, value) in ["x", "y", "z", "w", "g", "s", "r", "q", "d"]
            .iter()
            .zip(&components)
        {
            if value > &cube_bound {
                return Err(Error::PropertyViolation(format!(
                    "witness at x = {x}: component {name} exceeds the cube bound 2^(6n³m²)"
                )));
            }
        }
        count += 1;
    }
    let expected = natops::floor_root(m, &BigUint::from(n)) + 1u32;
    if BigUint::from(count) != expected {
        return Err(Error::PropertyViolation(format!(
            "witness count {count} differs from floor_root({m}, {n}) + 1 = {expected}"
        )));
    }
    Ok(count)
}
