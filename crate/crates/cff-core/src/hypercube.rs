//! Hypercube solution counting: the number of zeros of a simple exponential
//! polynomial f over the box [0, t-1]^k is recovered from the Hamming weight
//! of one huge integer
//!
//! ```text
//! M(f, t, u) = Σ_{a ∈ box} 2^(2uβ(a)) δ(f(a), u),   β(a) = a₁ + a₂t + … + aₖt^(k-1),
//! ```
//!
//! namely `HW(M)/u - t^k`, provided 0 <= f < 2^u on the box. M itself is
//! assembled from the closed forms A_k (one per monomial) and C_k (free
//! term) — never by enumerating the box; enumeration lives in the oracle
//! module. Specializing f to (x² - ny)² yields χ(n), the largest s with
//! s² | n, and g = (x² - ny - 1)² over Z_{4n} yields ω(n), the number of
//! distinct prime divisors.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::budget::BitBudget;
use crate::error::{Error, Result};
use crate::formulas::{self, emit, EvalBackend};
use crate::term::{CallFn, Term};

/// One monomial `c · v₁^(x₁) ⋯ vₖ^(xₖ) · x₁^(r₁) ⋯ xₖ^(rₖ)` of a simple
/// exponential polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monomial {
    pub coeff: BigInt,
    /// Exponential bases v_i >= 1, one per dimension.
    pub bases: Vec<BigUint>,
    /// Polynomial powers r_i, one per dimension.
    pub powers: Vec<u64>,
}

/// One solution-counting instance: dimension k, box side t, bit bound u,
/// free term c₀ and the non-constant monomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypercubeSpec {
    pub k: usize,
    pub t: u64,
    pub u: u64,
    pub c0: BigUint,
    pub monomials: Vec<Monomial>,
}

impl HypercubeSpec {
    /// Structural checks plus the bound obligation 0 <= f < 2^u over the box:
    /// exhaustive when the box has at most 10⁶ points, corner evaluation plus
    /// random sampling otherwise.
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.t == 0 || self.u == 0 {
            return Err(Error::Domain("hypercube spec needs k, t, u >= 1".into()));
        }
        for m in &self.monomials {
            if m.bases.len() != self.k || m.powers.len() != self.k {
                return Err(Error::Domain(format!(
                    "monomial arity mismatch: expected {} bases and powers",
                    self.k
                )));
            }
            if m.bases.iter().any(|v| v.is_zero()) {
                return Err(Error::Domain("monomial bases must be >= 1".into()));
            }
        }
        let bound = BigInt::from(BigUint::one() << self.u);
        let check = |point: &[u64]| -> Result<()> {
            let v = self.eval_f(point);
            if v.is_negative() || v >= bound {
                return Err(Error::Domain(format!(
                    "f{point:?} = {v} violates 0 <= f < 2^{}",
                    self.u
                )));
            }
            Ok(())
        };
        match self.box_volume() {
            Some(volume) if volume <= 1_000_000 => {
                let mut point = vec![0u64; self.k];
                for _ in 0..volume {
                    check(&point)?;
                    advance(&mut point, self.t);
                }
            }
            _ => {
                // Corners first (capped in high dimension), then a
                // deterministic random sample.
                let corner_dims = self.k.min(20);
                for corner in 0u64..(1u64 << corner_dims) {
                    let point: Vec<u64> = (0..self.k)
                        .map(|i| {
                            if i < corner_dims && corner >> i & 1 == 1 {
                                self.t - 1
                            } else {
                                0
                            }
                        })
                        .collect();
                    check(&point)?;
                }
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
                for _ in 0..2048 {
                    let point: Vec<u64> = (0..self.k).map(|_| rng.gen_range(0..self.t)).collect();
                    check(&point)?;
                }
            }
        }
        Ok(())
    }

    /// `t^k` when it fits in u64.
    pub fn box_volume(&self) -> Option<u64> {
        let mut acc = 1u64;
        for _ in 0..self.k {
            acc = acc.checked_mul(self.t)?;
        }
        Some(acc)
    }

    /// Evaluates f = c₀ + Σ monomials at a lattice point.
    pub fn eval_f(&self, point: &[u64]) -> BigInt {
        assert_eq!(point.len(), self.k);
        let mut acc = BigInt::from(self.c0.clone());
        for m in &self.monomials {
            let mut term = m.coeff.clone();
            for (i, &coord) in point.iter().enumerate() {
                if !m.bases[i].is_one() {
                    term *= BigInt::from(Pow::pow(&m.bases[i], coord));
                }
                if m.powers[i] > 0 {
                    term *= BigInt::from(coord).pow(m.powers[i] as u32);
                }
            }
            acc += term;
        }
        acc
    }
}

fn advance(point: &mut [u64], t: u64) {
    for slot in point.iter_mut() {
        *slot += 1;
        if *slot < t {
            break;
        }
        *slot = 0;
    }
}

/// `M(f, t, u)` assembled from the per-monomial closed forms
///
/// ```text
/// A_k(m, t, u) = -(2^u - 1) · c · Π_i G_{r_i}(v_i · 2^(2ut^(i-1)), t)
/// C_k(c₀, t, u) = (2^u - c₀ + 1)(2^(2ut^k) - 1) / (2^u + 1)
/// ```
///
/// The box is never enumerated here. The C_k division must be exact and the
/// total must be non-negative; violations signal an invalid spec.
pub fn build_m(spec: &HypercubeSpec, budget: BitBudget) -> Result<BigUint> {
    let t_pow_k = Pow::pow(&BigUint::from(spec.t), spec.k as u64);
    let required = (&t_pow_k + 1u32) * (2 * spec.u);
    budget.check_big(&required)?;
    let t_pow_k = t_pow_k.to_u64().expect("bounded by the bit budget");

    // Distinct G_{r}(v·2^(2ut^(i-1)), t) factors, computed once each and in
    // parallel: the top-dimension divisions dominate the whole build.
    let mut keys: Vec<(u64, usize, BigUint)> = Vec::new();
    for m in &spec.monomials {
        for i in 0..spec.k {
            let key = (m.powers[i], i, m.bases[i].clone());
            if !keys.contains(&key) {
                keys.push(key);
            }
        }
    }
    use rayon::prelude::*;
    let g_values: HashMap<(u64, usize, BigUint), BigUint> = keys
        .into_par_iter()
        .map(|key| {
            let (r, i, ref v) = key;
            let shift = (2 * spec.u) as u128 * (spec.t as u128).pow(i as u32);
            let q = v << u64::try_from(shift).expect("bounded by the bit budget");
            let g = formulas::g_series(r, &q, spec.t)?;
            Ok(((r, i, v.clone()), g))
        })
        .collect::<Result<_>>()?;

    let two_u_minus_1 = BigInt::from((BigUint::one() << spec.u) - 1u32);
    let mut m_total = c_free_term(&spec.c0, spec.u, t_pow_k)?;
    for m in &spec.monomials {
        let mut a = -&two_u_minus_1 * &m.coeff;
        for i in 0..spec.k {
            let g = &g_values[&(m.powers[i], i, m.bases[i].clone())];
            a *= BigInt::from(g.clone());
        }
        m_total += a;
    }
    m_total
        .to_biguint()
        .ok_or_else(|| Error::Inconsistent("M came out negative; spec is invalid".into()))
}

fn c_free_term(c0: &BigUint, u: u64, t_pow_k: u64) -> Result<BigInt> {
    let two_u = BigUint::one() << u;
    let numerator = (BigInt::from(&two_u + 1u32) - BigInt::from(c0.clone()))
        * BigInt::from((BigUint::one() << (2 * u * t_pow_k)) - 1u32);
    let (quot, rem) = numerator.div_rem(&BigInt::from(two_u + 1u32));
    if !rem.is_zero() {
        return Err(Error::Inconsistent(
            "free-term division by 2^u + 1 was not exact".into(),
        ));
    }
    Ok(quot)
}

/// Number of zeros of f over the box: `HW(M)/u - t^k`, both steps checked
/// for exactness.
pub fn count_solutions(spec: &HypercubeSpec, budget: BitBudget) -> Result<u64> {
    let m = build_m(spec, budget)?;
    count_zeros_from_m(&m, spec)
}

/// The counting step alone, for callers that also want M (bit-growth
/// measurements, suite reporting).
pub fn count_zeros_from_m(m: &BigUint, spec: &HypercubeSpec) -> Result<u64> {
    let hw = m.count_ones();
    if !hw.is_multiple_of(spec.u) {
        return Err(Error::Inconsistent(format!(
            "u = {} does not divide HW(M) = {hw}",
            spec.u
        )));
    }
    let blocks = hw / spec.u;
    let volume = spec
        .box_volume()
        .ok_or_else(|| Error::Range(format!("box {}^{} overflows", spec.t, spec.k)))?;
    blocks.checked_sub(volume).ok_or_else(|| {
        Error::Inconsistent("HW(M)/u fell below the box volume; spec is invalid".into())
    })
}

/// Spec counting zeros of (x² - ny)² over [0, n-1]²: the count is χ(n).
/// Bounds: (x² - ny)² <= n²(n-1)² < 2^(n+4) on the box, so u = n + 4.
pub fn chi_spec(n: u64) -> HypercubeSpec {
    let ones = vec![BigUint::one(), BigUint::one()];
    HypercubeSpec {
        k: 2,
        t: n,
        u: n + 4,
        c0: BigUint::zero(),
        monomials: vec![
            Monomial {
                coeff: BigInt::one(),
                bases: ones.clone(),
                powers: vec![4, 0],
            },
            Monomial {
                coeff: BigInt::from(-2i64) * n,
                bases: ones.clone(),
                powers: vec![2, 1],
            },
            Monomial {
                coeff: BigInt::from(n) * n,
                bases: ones,
                powers: vec![0, 2],
            },
        ],
    }
}

/// Spec counting zeros of (x² - Ny - 1)² over [0, N-1]² at N = 4n: the count
/// is the number of roots of x² = 1 in Z_{4n}, i.e. 2^(ω(n)+1).
pub fn omega_spec(n: u64) -> HypercubeSpec {
    let nn = 4 * n;
    let ones = vec![BigUint::one(), BigUint::one()];
    HypercubeSpec {
        k: 2,
        t: nn,
        u: nn + 4,
        c0: BigUint::one(),
        monomials: vec![
            Monomial {
                coeff: BigInt::one(),
                bases: ones.clone(),
                powers: vec![4, 0],
            },
            Monomial {
                coeff: BigInt::from(-2i64),
                bases: ones.clone(),
                powers: vec![2, 0],
            },
            Monomial {
                coeff: BigInt::from(-2i64) * nn,
                bases: ones.clone(),
                powers: vec![2, 1],
            },
            Monomial {
                coeff: BigInt::from(nn) * nn,
                bases: ones.clone(),
                powers: vec![0, 2],
            },
            Monomial {
                coeff: BigInt::from(2u32) * nn,
                bases: ones,
                powers: vec![0, 1],
            },
        ],
    }
}

/// Bits of M for the χ construction at n: 2(n+4)n².
pub fn chi_full_term_bits(n: u64) -> u128 {
    2 * (n as u128 + 4) * n as u128 * n as u128
}

/// Bits of M for the ω construction at n: 2(4n+4)(4n)².
pub fn omega_full_term_bits(n: u64) -> u128 {
    let t = 4 * n as u128;
    2 * (t + 4) * t * t
}

/// The default backend policy: the full closed form when its M fits the
/// ceiling, the native algorithm beyond it.
pub fn default_backend(required_bits: u128, budget: BitBudget) -> EvalBackend {
    if required_bits <= u128::from(budget.bits()) {
        EvalBackend::FullTerm
    } else {
        EvalBackend::Native
    }
}

/// χ(n): largest s with s² | n.
///
/// The term backends count residues through the hypercube closed forms; the
/// native backend reads the factorization. Defaults to capacity errors, not
/// fallback, when the term path exceeds the budget.
pub fn chi(n: u64, backend: EvalBackend, budget: BitBudget) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("chi needs n >= 1".into()));
    }
    match backend {
        EvalBackend::Native => Ok(crate::oracles::chi_from_factorization(n)),
        EvalBackend::FullTerm | EvalBackend::Layered => count_solutions(&chi_spec(n), budget),
    }
}

/// ω(n): number of distinct prime divisors (0 for n = 1).
///
/// Term backends: ω(n) = ν₂(HW(M)/(4n+4) - 16n²) - 1 with the residue count
/// from the hypercube closed forms; `FullTerm` also runs the final ν₂ through
/// its closed form, `Layered` counts trailing zeros natively.
pub fn omega(n: u64, backend: EvalBackend, budget: BitBudget) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("omega needs n >= 1".into()));
    }
    match backend {
        EvalBackend::Native => Ok(crate::oracles::omega_trial(n)),
        EvalBackend::FullTerm | EvalBackend::Layered => {
            let roots = count_solutions(&omega_spec(n), budget)?;
            let nu = match backend {
                EvalBackend::FullTerm => {
                    formulas::nu2(&BigUint::from(roots), EvalBackend::FullTerm, budget)?
                }
                _ => crate::oracles::nu2_halving(&BigUint::from(roots))?,
            };
            nu.checked_sub(1)
                .ok_or_else(|| Error::Inconsistent(format!("root count {roots} has no factor 2")))
        }
    }
}

/// The χ(n) term over the variable n, with the Hamming weight as a reserved
/// call; everything else — the A/C assembly and the G closed forms — is plain
/// term structure. Monomial contributions of each sign are grouped so the
/// single monus is exact.
pub fn chi_term() -> Term {
    let n = Term::var("n");
    let u = || n.clone().add(Term::from(4u64));
    let t = || n.clone();
    let m_term = m_term_for(
        u(),
        t(),
        Term::from(0u64),
        // (x² - ny)² = x⁴ - 2n·x²y + n²y²
        vec![
            SignedMonomial::negative(Term::from(1u64), 4, 0),
            SignedMonomial::positive(Term::from(2u64).mul(n.clone()), 2, 1),
            SignedMonomial::negative(n.clone().pow(Term::from(2u64)), 0, 2),
        ],
    );
    hw_call(m_term)
        .floor_div(u())
        .monus(n.clone().pow(Term::from(2u64)))
}

/// The ω(n) term over the variable n: the residue count 2^(ω+1) from the
/// hypercube machinery at parameter 4n, pushed through the ν₂ closed form
/// (with its inner gcd as a reserved call), minus one.
pub fn omega_term() -> Term {
    let n = Term::var("n");
    let four_n = || Term::from(4u64).mul(n.clone());
    let u = || four_n().add(Term::from(4u64));
    let t = four_n;
    let m_term = m_term_for(
        u(),
        t(),
        Term::from(1u64),
        // (x² - Ny - 1)² = x⁴ - 2x² - 2N·x²y + N²y² + 2Ny + 1 at N = 4n
        vec![
            SignedMonomial::negative(Term::from(1u64), 4, 0),
            SignedMonomial::positive(Term::from(2u64), 2, 0),
            SignedMonomial::positive(Term::from(2u64).mul(four_n()), 2, 1),
            SignedMonomial::negative(four_n().pow(Term::from(2u64)), 0, 2),
            SignedMonomial::negative(Term::from(2u64).mul(four_n()), 0, 1),
        ],
    );
    let roots = hw_call(m_term)
        .floor_div(u())
        .monus(t().pow(Term::from(2u64)));
    emit::nu2_term_hybrid(roots).monus(Term::from(1u64))
}

/// A monomial contribution to the M term. `positive` means the A_k value
/// -(2^u - 1)·c·ΠG is positive, i.e. the coefficient c is negative; the
/// magnitude |c| is what gets emitted.
struct SignedMonomial {
    positive: bool,
    abs_coeff: Term,
    r1: u64,
    r2: u64,
}

impl SignedMonomial {
    fn positive(abs_coeff: Term, r1: u64, r2: u64) -> SignedMonomial {
        SignedMonomial {
            positive: true,
            abs_coeff,
            r1,
            r2,
        }
    }

    fn negative(abs_coeff: Term, r1: u64, r2: u64) -> SignedMonomial {
        SignedMonomial {
            positive: false,
            abs_coeff,
            r1,
            r2,
        }
    }
}

/// M = C₂(c₀, t, u) + Σ A₂ as a term, for the 2-dimensional, base-1 case the
/// χ/ω constructions use: q₁ = 2^(2u), q₂ = 2^(2ut).
fn m_term_for(u: Term, t: Term, c0: Term, monomials: Vec<SignedMonomial>) -> Term {
    let two = || Term::from(2u64);
    let q1 = || two().pow(two().mul(u.clone()));
    let q2 = || two().pow(two().mul(u.clone()).mul(t.clone()));
    let c = two()
        .pow(u.clone())
        .monus(c0)
        .add(Term::from(1u64))
        .mul(
            two()
                .pow(two().mul(u.clone()).mul(t.clone().pow(two())))
                .monus(Term::from(1u64)),
        )
        .floor_div(two().pow(u.clone()).add(Term::from(1u64)));
    let factor = |sm: &SignedMonomial| {
        two()
            .pow(u.clone())
            .monus(Term::from(1u64))
            .mul(sm.abs_coeff.clone())
            .mul(emit::g_series_term(sm.r1, q1(), t.clone()).expect("r in {0,1,2,4}"))
            .mul(emit::g_series_term(sm.r2, q2(), t.clone()).expect("r in {0,1,2,4}"))
    };
    let mut pos = c;
    let mut neg: Option<Term> = None;
    for sm in &monomials {
        let f = factor(sm);
        if sm.positive {
            pos = pos.add(f);
        } else {
            neg = Some(match neg {
                Some(acc) => acc.add(f),
                None => f,
            });
        }
    }
    match neg {
        Some(neg) => pos.monus(neg),
        None => pos,
    }
}

fn hw_call(arg: Term) -> Term {
    Term::call(CallFn::Hw, vec![arg])
}

/// Wire format of a spec for the CLI `count` subcommand.
#[derive(Debug, Serialize, Deserialize)]
pub struct HypercubeSpecDto {
    pub k: usize,
    pub t: u64,
    pub u: u64,
    pub c0: u64,
    pub monomials: Vec<MonomialDto>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MonomialDto {
    pub c: i64,
    pub v: Vec<u64>,
    pub r: Vec<u64>,
}

impl From<HypercubeSpecDto> for HypercubeSpec {
    fn from(dto: HypercubeSpecDto) -> HypercubeSpec {
        HypercubeSpec {
            k: dto.k,
            t: dto.t,
            u: dto.u,
            c0: BigUint::from(dto.c0),
            monomials: dto
                .monomials
                .into_iter()
                .map(|m| Monomial {
                    coeff: BigInt::from(m.c),
                    bases: m.v.into_iter().map(BigUint::from).collect(),
                    powers: m.r,
                })
                .collect(),
        }
    }
}
