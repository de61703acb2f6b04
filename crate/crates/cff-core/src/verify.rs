//! Named verification suites: each one replays a module invariant over a
//! range and reports one line per comparison, pass/fail decided by exact
//! string equality of expected and got. Ranges shard across a worker pool;
//! output order is deterministic.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Pow, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::BitBudget;
use crate::error::{Error, Result};
use crate::factoring::{self, RootConjectureOutcome};
use crate::formulas::{self, EvalBackend};
use crate::hypercube::{self, HypercubeSpec, Monomial};
use crate::oracles;

/// One verified comparison. `ok` holds exactly when `expected == got`;
/// `bits` is the bit length of the largest tracked intermediate (0 when the
/// computation has none worth tracking) and `micros` the wall time.
#[derive(Debug, Clone, Serialize)]
pub struct ReportLine {
    pub suite: String,
    pub input: String,
    pub expected: String,
    pub got: String,
    pub ok: bool,
    pub bits: u64,
    pub micros: u64,
}

impl ReportLine {
    fn new(
        suite: &str,
        input: String,
        expected: impl ToString,
        got: impl ToString,
        bits: u64,
        started: Instant,
    ) -> ReportLine {
        let expected = expected.to_string();
        let got = got.to_string();
        ReportLine {
            suite: suite.to_string(),
            input,
            ok: expected == got,
            expected,
            got,
            bits,
            micros: started.elapsed().as_micros() as u64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Chi,
    Omega,
    Gcd,
    Nu2,
    Hw,
    Binom,
    Factorial,
    Pow,
    Gseries,
    HypercubeRandom,
    Systems,
    Residues,
    RootConjecture,
    Factor,
    Witness,
}

pub const ALL_SUITES: [Suite; 15] = [
    Suite::Chi,
    Suite::Omega,
    Suite::Gcd,
    Suite::Nu2,
    Suite::Hw,
    Suite::Binom,
    Suite::Factorial,
    Suite::Pow,
    Suite::Gseries,
    Suite::HypercubeRandom,
    Suite::Systems,
    Suite::Residues,
    Suite::RootConjecture,
    Suite::Factor,
    Suite::Witness,
];

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Chi => "chi",
            Suite::Omega => "omega",
            Suite::Gcd => "gcd",
            Suite::Nu2 => "nu2",
            Suite::Hw => "hw",
            Suite::Binom => "binom",
            Suite::Factorial => "factorial",
            Suite::Pow => "pow",
            Suite::Gseries => "gseries",
            Suite::HypercubeRandom => "hypercube-random",
            Suite::Systems => "systems",
            Suite::Residues => "residues",
            Suite::RootConjecture => "root-conjecture",
            Suite::Factor => "factor",
            Suite::Witness => "witness",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        ALL_SUITES.into_iter().find(|s| s.name() == name)
    }

    /// Range the suite runs over when none is given: the verified envelope.
    pub fn default_range(self) -> (u64, u64) {
        match self {
            Suite::Chi => (1, 60),
            Suite::Omega => (1, 24),
            Suite::Gcd => (1, 16),
            Suite::Nu2 => (1, 64),
            Suite::Hw => (1, 200),
            Suite::Binom => (0, 24),
            Suite::Factorial => (0, 8),
            Suite::Pow => (0, 50),
            Suite::Gseries => (0, 30),
            Suite::HypercubeRandom => (1, 50),
            Suite::Systems => (2, 24),
            Suite::Residues => (1, 2000),
            Suite::RootConjecture => (3, 500),
            Suite::Factor => (4, 2000),
            Suite::Witness => (1, 20),
        }
    }

    /// Mismatches in this suite are reported but do not fail the run.
    pub fn advisory(self) -> bool {
        matches!(self, Suite::RootConjecture)
    }
}

fn par_flat<I, F>(inputs: Vec<I>, f: F) -> Result<Vec<ReportLine>>
where
    I: Send,
    F: Fn(I) -> Result<Vec<ReportLine>> + Sync + Send,
{
    let nested: Vec<Vec<ReportLine>> = inputs.into_par_iter().map(f).collect::<Result<_>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// Runs one suite over an inclusive range.
pub fn run_suite(suite: Suite, range: (u64, u64), budget: BitBudget) -> Result<Vec<ReportLine>> {
    let (lo, hi) = range;
    if lo > hi {
        return Err(Error::Range(format!("empty range {lo}..{hi}")));
    }
    let span: Vec<u64> = (lo..=hi).collect();
    match suite {
        Suite::Chi => par_flat(span, |n| {
            let started = Instant::now();
            let spec = hypercube::chi_spec(n);
            let m = hypercube::build_m(&spec, budget)?;
            let bits = m.bits();
            let got = hypercube::count_zeros_from_m(&m, &spec)?;
            Ok(vec![
                ReportLine::new(
                    "chi",
                    format!("n={n} vs largest-square scan"),
                    oracles::chi_largest_square_scan(n),
                    got,
                    bits,
                    started,
                ),
                ReportLine::new(
                    "chi",
                    format!("n={n} vs residue count"),
                    oracles::chi_residue_count(n),
                    got,
                    bits,
                    started,
                ),
            ])
        }),
        Suite::Omega => par_flat(span, |n| {
            let started = Instant::now();
            let spec = hypercube::omega_spec(n);
            let m = hypercube::build_m(&spec, budget)?;
            let bits = m.bits();
            let roots = hypercube::count_zeros_from_m(&m, &spec)?;
            let got = formulas::nu2(&BigUint::from(roots), EvalBackend::FullTerm, budget)? - 1;
            let via_residues =
                oracles::nu2_halving(&BigUint::from(oracles::omega_residue_count(n)))? - 1;
            Ok(vec![
                ReportLine::new(
                    "omega",
                    format!("n={n} vs trial factorization"),
                    oracles::omega_trial(n),
                    got,
                    bits,
                    started,
                ),
                ReportLine::new(
                    "omega",
                    format!("n={n} vs residue count"),
                    via_residues,
                    got,
                    bits,
                    started,
                ),
            ])
        }),
        Suite::Gcd => par_flat(span.clone(), |a| {
            let mut lines = Vec::new();
            for b in span.iter().copied() {
                let started = Instant::now();
                let a_big = BigUint::from(a);
                let b_big = BigUint::from(b);
                let got = formulas::gcd_term(&a_big, &b_big, budget)?;
                let ab = a as u128 * b as u128;
                lines.push(ReportLine::new(
                    "gcd",
                    format!("a={a} b={b}"),
                    oracles::euclid_gcd(&a_big, &b_big),
                    got,
                    (ab * (ab + a as u128 + b as u128)) as u64,
                    started,
                ));
            }
            Ok(lines)
        }),
        Suite::Nu2 => par_flat(span, |n| {
            if n == 0 {
                return Ok(vec![]); // outside the valuation's domain
            }
            let started = Instant::now();
            let n_big = BigUint::from(n);
            let got = formulas::nu2(&n_big, EvalBackend::FullTerm, budget)?;
            let expected = oracles::nu2_halving(&n_big)?;
            Ok(vec![ReportLine::new(
                "nu2",
                format!("n={n}"),
                expected,
                got,
                expected * (n + 1) + 1,
                started,
            )])
        }),
        Suite::Hw => par_flat(span, |n| {
            let started = Instant::now();
            let binom = oracles::pascal_binom(2 * n, n);
            let bits = binom.bits();
            let got = formulas::hw_kummer(n)?;
            Ok(vec![ReportLine::new(
                "hw",
                format!("n={n} via Kummer"),
                oracles::popcount(&BigUint::from(n)),
                got,
                bits,
                started,
            )])
        }),
        Suite::Binom => par_flat(span, |a| {
            let mut lines = Vec::new();
            for b in 0..=a {
                let expected = oracles::pascal_binom(a, b);
                let started = Instant::now();
                let got = formulas::binom1(a, b, budget)?;
                lines.push(ReportLine::new(
                    "binom",
                    format!("binom1 a={a} b={b}"),
                    &expected,
                    got,
                    a * (a + 1),
                    started,
                ));
                let started = Instant::now();
                let got = formulas::binom2(a, b, budget)?;
                lines.push(ReportLine::new(
                    "binom",
                    format!("binom2 a={a} b={b}"),
                    &expected,
                    got,
                    2 * (a + 2) * ((a + 1) * (a + 1) + b + 1),
                    started,
                ));
            }
            Ok(lines)
        }),
        Suite::Factorial => par_flat(span, |n| {
            let expected = oracles::factorial_iterated(n);
            let mut lines = Vec::new();
            let started = Instant::now();
            let got = formulas::factorial_term(n, EvalBackend::Layered)?;
            lines.push(ReportLine::new(
                "factorial",
                format!("layered n={n}"),
                &expected,
                got,
                3 * n * n * n,
                started,
            ));
            if n <= formulas::FACTORIAL_FULL_TERM_MAX_N {
                let started = Instant::now();
                let got = formulas::factorial_term(n, EvalBackend::FullTerm)?;
                let a = 8u64.pow((n * n) as u32);
                lines.push(ReportLine::new(
                    "factorial",
                    format!("full-term n={n}"),
                    &expected,
                    got,
                    a * (a + 1),
                    started,
                ));
            }
            Ok(lines)
        }),
        Suite::Pow => par_flat(span, |x| {
            let mut lines = Vec::new();
            for m in 1..=8u64 {
                let started = Instant::now();
                let got = formulas::pow_lemma(&BigUint::from(x), m, budget)?;
                lines.push(ReportLine::new(
                    "pow",
                    format!("x={x} m={m}"),
                    Pow::pow(&BigUint::from(x), m),
                    got,
                    3 * m * m * x,
                    started,
                ));
            }
            Ok(lines)
        }),
        Suite::Gseries => par_flat(span, |t| {
            let mut lines = Vec::new();
            let qs: Vec<u64> = (1..=8).chain((0..=12).map(|k| 1u64 << k)).collect();
            for r in [0u64, 1, 2, 4] {
                for &q in &qs {
                    let started = Instant::now();
                    let q_big = BigUint::from(q);
                    let got = formulas::g_series(r, &q_big, t)?;
                    let bits = got.bits();
                    lines.push(ReportLine::new(
                        "gseries",
                        format!("r={r} q={q} t={t}"),
                        oracles::g_series_naive(r, &q_big, t),
                        got,
                        bits,
                        started,
                    ));
                }
            }
            Ok(lines)
        }),
        Suite::HypercubeRandom => par_flat(span, |index| {
            let started = Instant::now();
            let spec = random_validated_spec(index);
            spec.validate()?;
            let m = hypercube::build_m(&spec, budget)?;
            let bits = m.bits();
            let got = hypercube::count_zeros_from_m(&m, &spec)?;
            Ok(vec![ReportLine::new(
                "hypercube-random",
                format!(
                    "spec #{index}: k={} t={} u={} monomials={}",
                    spec.k,
                    spec.t,
                    spec.u,
                    spec.monomials.len()
                ),
                oracles::enumerate_box_zeros(&spec)?,
                got,
                bits,
                started,
            )])
        }),
        Suite::Systems => par_flat(span, |n| {
            let mut lines = Vec::new();
            // Each lemma has its own verified envelope; clamp rather than
            // error so one range covers both.
            if (2..=24).contains(&n) {
                let started = Instant::now();
                let r = oracles::smallest_divisor_system_count(n)?;
                lines.push(ReportLine::new(
                    "systems",
                    format!("smallest-divisor n={n}"),
                    r.predicted,
                    r.count,
                    0,
                    started,
                ));
            }
            if (2..=20).contains(&n) {
                let started = Instant::now();
                let r = oracles::greatest_prime_system_count(n)?;
                lines.push(ReportLine::new(
                    "systems",
                    format!("greatest-prime n={n}"),
                    r.predicted,
                    r.count,
                    0,
                    started,
                ));
            }
            Ok(lines)
        }),
        Suite::Residues => par_flat(span, |n| {
            let started = Instant::now();
            let chi_count = oracles::chi_residue_count(n);
            let l1 = ReportLine::new(
                "residues",
                format!("a^2=0 mod n, n={n}"),
                oracles::chi_largest_square_scan(n),
                chi_count,
                0,
                started,
            );
            let started = Instant::now();
            let omega_count = oracles::omega_residue_count(n);
            let l2 = ReportLine::new(
                "residues",
                format!("a^2=1 mod 4n, n={n}"),
                1u64 << (oracles::omega_trial(n) + 1),
                omega_count,
                0,
                started,
            );
            Ok(vec![l1, l2])
        }),
        Suite::RootConjecture => par_flat(span, |n| {
            let mut lines = Vec::new();
            for m in 2..=6u64 {
                if n <= 2 || m > 64 - n.leading_zeros() as u64 {
                    continue;
                }
                let exact = crate::natops::floor_root(m, &BigUint::from(n));
                if Pow::pow(&exact, m) == BigUint::from(n) {
                    continue; // hypothesis: n is not a perfect m-th power
                }
                let started = Instant::now();
                let bits = 2 * n * m * m * BigUint::from(n).bits();
                match factoring::floor_root_conjecture(m, n, budget)? {
                    RootConjectureOutcome::Agrees(v) => {
                        lines.push(ReportLine::new(
                            "root-conjecture",
                            format!("m={m} n={n}"),
                            &exact,
                            v,
                            bits,
                            started,
                        ));
                    }
                    RootConjectureOutcome::Mismatch { conjectured, .. } => {
                        lines.push(ReportLine::new(
                            "root-conjecture",
                            format!("m={m} n={n}"),
                            &exact,
                            conjectured,
                            bits,
                            started,
                        ));
                    }
                }
            }
            Ok(lines)
        }),
        Suite::Factor => par_flat(span, |n| {
            if n < 4 || oracles::is_prime(n) {
                return Ok(vec![]);
            }
            let mut lines = Vec::new();
            for method in [factoring::FactorMethod::T, factoring::FactorMethod::U] {
                let started = Instant::now();
                let report = match method {
                    factoring::FactorMethod::T => {
                        factoring::factor_t(n, EvalBackend::Native, budget)?
                    }
                    factoring::FactorMethod::U => {
                        factoring::factor_u(n, EvalBackend::Native, budget)?
                    }
                };
                lines.push(ReportLine::new(
                    "factor",
                    format!("{method}({n}) proper divisor"),
                    "proper",
                    if report.proper {
                        "proper".to_string()
                    } else {
                        format!("divisor={}", report.divisor)
                    },
                    0,
                    started,
                ));
            }
            if oracles::is_squarefree(n) {
                let started = Instant::now();
                let ok = factoring::root_bound_check(n)?;
                lines.push(ReportLine::new(
                    "factor",
                    format!("root bound n={n}"),
                    "true",
                    ok,
                    0,
                    started,
                ));
            }
            Ok(lines)
        }),
        Suite::Witness => par_flat(span, |n| {
            if !(1..=20).contains(&n) {
                return Err(Error::Range(format!(
                    "witness suite supports 1 <= n <= 20, got {n}"
                )));
            }
            let mut lines = Vec::new();
            for m in 1..=3u64 {
                let started = Instant::now();
                let got = factoring::witness_check_pow_equation(m, n)?;
                let expected = crate::natops::floor_root(m, &BigUint::from(n)) + 1u32;
                lines.push(ReportLine::new(
                    "witness",
                    format!("m={m} n={n}"),
                    expected,
                    got,
                    6 * n * n * n * m * m,
                    started,
                ));
            }
            Ok(lines)
        }),
    }
}

/// Deterministic random spec with a verified bound: draw a small signed
/// exponential polynomial g and use f = g², whose monomial expansion stays
/// simple (products of monomials are monomials) and is non-negative by
/// construction. The bit bound u comes from an exhaustive max over the box.
fn random_validated_spec(index: u64) -> HypercubeSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FF_EE00 ^ index);
    let k = if rng.gen_bool(0.5) { 1 } else { 2 };
    let t = if k == 1 {
        rng.gen_range(3..=160)
    } else {
        rng.gen_range(2..=17)
    };

    // g = c0g + Σ c·v^x·x^r with tiny coefficients.
    let n_monomials = rng.gen_range(1..=3);
    let mut g_c0: BigInt = BigInt::from(rng.gen_range(-4i64..=4));
    let mut g_monomials: Vec<(BigInt, Vec<BigUint>, Vec<u64>)> = Vec::new();
    for _ in 0..n_monomials {
        let coeff = loop {
            let c = rng.gen_range(-4i64..=4);
            if c != 0 {
                break BigInt::from(c);
            }
        };
        let bases: Vec<BigUint> = (0..k)
            .map(|_| BigUint::from(*[1u64, 1, 1, 2, 3].get(rng.gen_range(0..5)).unwrap()))
            .collect();
        let powers: Vec<u64> = (0..k).map(|_| rng.gen_range(0..=2)).collect();
        if bases.iter().all(|b| b.is_one()) && powers.iter().all(|&r| r == 0) {
            // A constant monomial folds into the free term.
            g_c0 += coeff;
            continue;
        }
        g_monomials.push((coeff, bases, powers));
    }

    // f = g²: cross products of monomials plus the doubled free-term row.
    let mut monomials: Vec<Monomial> = Vec::new();
    for (ci, vi, ri) in &g_monomials {
        for (cj, vj, rj) in &g_monomials {
            monomials.push(Monomial {
                coeff: ci * cj,
                bases: vi.iter().zip(vj).map(|(a, b)| a * b).collect(),
                powers: ri.iter().zip(rj).map(|(a, b)| a + b).collect(),
            });
        }
        monomials.push(Monomial {
            coeff: 2 * &g_c0 * ci,
            bases: vi.clone(),
            powers: ri.clone(),
        });
    }
    let c0 = (&g_c0 * &g_c0).to_biguint().expect("a square");

    let mut spec = HypercubeSpec {
        k,
        t,
        u: 1,
        c0,
        monomials,
    };
    // Exhaustive max over the box pins u; the box is small by construction.
    let mut max_f = BigInt::zero();
    let mut point = vec![0u64; k];
    for _ in 0..spec.box_volume().expect("small box") {
        let v = spec.eval_f(&point);
        assert!(!v.is_negative(), "f = g^2 must be non-negative");
        if v > max_f {
            max_f = v;
        }
        for slot in point.iter_mut() {
            *slot += 1;
            if *slot < spec.t {
                break;
            }
            *slot = 0;
        }
    }
    spec.u = max_f.magnitude().bits().max(1) + 1;
    spec
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchFormula {
    Chi,
    Omega,
}

/// One bit-growth measurement row.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub n: u64,
    pub value: u64,
    pub bits: u64,
    pub micros: u64,
    /// For chi: whether bits(M) sits within ±2(n+4) of 2(n+4)n².
    pub bits_ok: bool,
}

/// Bit growth of M per n, with the chi rows checked against the predicted
/// envelope 2(n+4)n² ± 2(n+4).
pub fn bench(formula: BenchFormula, max_n: u64, budget: BitBudget) -> Result<Vec<BenchRow>> {
    let span: Vec<u64> = (2..=max_n).collect();
    span.into_par_iter()
        .map(|n| {
            let started = Instant::now();
            match formula {
                BenchFormula::Chi => {
                    let spec = hypercube::chi_spec(n);
                    let m = hypercube::build_m(&spec, budget)?;
                    let value = hypercube::count_zeros_from_m(&m, &spec)?;
                    let bits = m.bits();
                    let center = 2 * (n + 4) * n * n;
                    let slack = 2 * (n + 4);
                    Ok(BenchRow {
                        n,
                        value,
                        bits,
                        micros: started.elapsed().as_micros() as u64,
                        bits_ok: bits + slack >= center && bits <= center + slack,
                    })
                }
                BenchFormula::Omega => {
                    let value = hypercube::omega(n, EvalBackend::FullTerm, budget)?;
                    let m = hypercube::build_m(&hypercube::omega_spec(n), budget)?;
                    Ok(BenchRow {
                        n,
                        value,
                        bits: m.bits(),
                        micros: started.elapsed().as_micros() as u64,
                        bits_ok: true,
                    })
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> BitBudget {
        BitBudget::default()
    }

    #[test]
    fn suite_names_round_trip() {
        for s in ALL_SUITES {
            assert_eq!(Suite::from_name(s.name()), Some(s));
        }
        assert_eq!(Suite::from_name("nope"), None);
    }

    #[test]
    fn chi_suite_small_range_all_ok() {
        let lines = run_suite(Suite::Chi, (1, 12), budget()).unwrap();
        assert_eq!(lines.len(), 24);
        assert!(lines.iter().all(|l| l.ok), "{lines:#?}");
    }

    #[test]
    fn systems_suite_clamps_greatest_prime_range() {
        let lines = run_suite(Suite::Systems, (2, 24), budget()).unwrap();
        assert!(lines.iter().all(|l| l.ok));
        let greatest = lines
            .iter()
            .filter(|l| l.input.starts_with("greatest"))
            .count();
        assert_eq!(greatest, 19); // clamped to n <= 20
        let smallest = lines
            .iter()
            .filter(|l| l.input.starts_with("smallest"))
            .count();
        assert_eq!(smallest, 23);
    }

    #[test]
    fn report_line_serializes_exact_fields() {
        let lines = run_suite(Suite::Witness, (5, 5), budget()).unwrap();
        let v: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&lines[0]).unwrap()).unwrap();
        let obj = v.as_object().unwrap();
        let mut keys: Vec<_> = obj.keys().map(String::as_str).collect();
        keys.sort_unstable();
        assert_eq!(
            keys,
            ["bits", "expected", "got", "input", "micros", "ok", "suite"]
        );
    }

    #[test]
    fn random_specs_are_valid_and_deterministic() {
        for index in 1..=10 {
            let a = random_validated_spec(index);
            let b = random_validated_spec(index);
            assert_eq!(a, b);
            a.validate().unwrap();
        }
    }

    #[test]
    fn hypercube_random_suite_small() {
        let lines = run_suite(Suite::HypercubeRandom, (1, 8), budget()).unwrap();
        assert!(lines.iter().all(|l| l.ok), "{lines:#?}");
    }

    #[test]
    fn bench_chi_rows_in_envelope() {
        let rows = bench(BenchFormula::Chi, 12, budget()).unwrap();
        assert_eq!(rows.len(), 11);
        assert!(rows.iter().all(|r| r.bits_ok));
        assert_eq!(rows[0].value, 1); // chi(2) = 1
    }
}
