//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Tolerances are exact equality throughout; wall-clock limits are asserted
//! where the criterion pins one. Run with `--nocapture` to see the lines.

use std::panic::{catch_unwind, UnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Pow;

use cff_core::budget::BitBudget;
use cff_core::factoring::{self, RootConjectureOutcome};
use cff_core::formulas::EvalBackend;
use cff_core::verify::{bench, run_suite, BenchFormula, Suite};
use cff_core::{hypercube, oracles};

fn criterion(number: u8, what: &str, limit: Option<Duration>, body: impl FnOnce() + UnwindSafe) {
    let started = Instant::now();
    let outcome = catch_unwind(body);
    let elapsed = started.elapsed();
    let in_time = limit.is_none_or(|l| elapsed < l);
    let ok = outcome.is_ok() && in_time;
    println!(
        "criterion {number:02} [{}] {what} ({elapsed:.2?})",
        if ok { "pass" } else { "FAIL" }
    );
    if let Err(panic) = outcome {
        std::panic::resume_unwind(panic);
    }
    if let Some(l) = limit {
        assert!(
            in_time,
            "criterion {number} exceeded its {l:?} limit: {elapsed:.2?}"
        );
    }
}

fn assert_suite_ok(suite: Suite, range: (u64, u64), budget: BitBudget) {
    let lines = run_suite(suite, range, budget).expect("suite must run");
    let failures: Vec<_> = lines.iter().filter(|l| !l.ok).collect();
    assert!(
        failures.is_empty(),
        "suite {} has {} failing lines, first: {:?}",
        suite.name(),
        failures.len(),
        failures.first()
    );
}

#[test]
fn c01_worked_divisor_examples_full_term() {
    criterion(
        1,
        "T(10) = 2, T(20) = 2, T(50) = 10 with full-term chi/omega",
        Some(Duration::from_secs(10)),
        || {
            // omega(50) runs the hypercube at t = 200, u = 204: ~16.4M bits.
            let budget = BitBudget::new(20_000_000);
            for (n, want) in [(10u64, 2u64), (20, 2), (50, 10)] {
                let report = factoring::factor_t(n, EvalBackend::FullTerm, budget).unwrap();
                assert_eq!(report.divisor, want, "T({n})");
                assert_eq!(report.backend, EvalBackend::FullTerm);
                assert!(report.proper);
                assert_eq!(report.divisor * report.cofactor, n);
            }
        },
    );
}

#[test]
fn c02_chi_full_term_vs_both_oracles() {
    criterion(
        2,
        "chi full-term equals both oracles for n in [1, 60]",
        Some(Duration::from_secs(30)),
        || assert_suite_ok(Suite::Chi, (1, 60), BitBudget::default()),
    );
}

#[test]
fn c03_omega_full_term_vs_both_oracles() {
    criterion(
        3,
        "omega full-term equals both oracles for n in [1, 24]",
        Some(Duration::from_secs(60)),
        || assert_suite_ok(Suite::Omega, (1, 24), BitBudget::default()),
    );
}

#[test]
fn c04_gcd_nu2_hw_formulas() {
    criterion(
        4,
        "gcd term = Euclid (a,b <= 16); nu2 term = oracle (n <= 64); Kummer HW = popcount (n <= 200)",
        Some(Duration::from_secs(30)),
        || {
            let budget = BitBudget::default();
            assert_suite_ok(Suite::Gcd, (1, 16), budget);
            assert_suite_ok(Suite::Nu2, (1, 64), budget);
            assert_suite_ok(Suite::Hw, (1, 200), budget);
        },
    );
}

#[test]
fn c05_binomials_and_factorial() {
    criterion(
        5,
        "both binomial terms = Pascal (b <= a <= 24); factorial layered n <= 8, full n <= 2",
        Some(Duration::from_secs(30)),
        || {
            let budget = BitBudget::default();
            assert_suite_ok(Suite::Binom, (0, 24), budget);
            assert_suite_ok(Suite::Factorial, (0, 8), budget);
        },
    );
}

#[test]
fn c06_power_identity_and_witnesses() {
    criterion(
        6,
        "x^m identity exact (x <= 50, m <= 8); witness counts = floor_root + 1 (m <= 3, n <= 20)",
        Some(Duration::from_secs(60)),
        || {
            let budget = BitBudget::default();
            assert_suite_ok(Suite::Pow, (0, 50), budget);
            assert_suite_ok(Suite::Witness, (1, 20), budget);
        },
    );
}

#[test]
fn c07_g_series_closed_forms() {
    criterion(
        7,
        "G_r closed forms = naive sums for r in {0,1,2,4}, q in {1..8} ∪ {2^k} incl. q = 1",
        None,
        || assert_suite_ok(Suite::Gseries, (0, 30), BitBudget::default()),
    );
}

#[test]
fn c08_randomized_hypercube_specs() {
    criterion(
        8,
        "hypercube counter = enumeration on 50 randomized validated specs",
        None,
        || assert_suite_ok(Suite::HypercubeRandom, (1, 50), BitBudget::default()),
    );
}

#[test]
fn c09_counting_systems() {
    criterion(
        9,
        "smallest-divisor system (n in [2,24]) and greatest-prime system (n in [2,20]) counts",
        None,
        || {
            for n in 2..=24 {
                let r = oracles::smallest_divisor_system_count(n).unwrap();
                assert!(r.agrees, "smallest-divisor system at n={n}: {r:?}");
            }
            for n in 2..=20 {
                let r = oracles::greatest_prime_system_count(n).unwrap();
                assert!(r.agrees, "greatest-prime system at n={n}: {r:?}");
            }
        },
    );
}

#[test]
fn c10_residue_counts() {
    criterion(
        10,
        "residue counts: chi and 2^(omega+1) for n in [1, 2000]",
        Some(Duration::from_secs(60)),
        || assert_suite_ok(Suite::Residues, (1, 2000), BitBudget::default()),
    );
}

#[test]
fn c11_factoring_soundness_and_root_bound() {
    criterion(
        11,
        "T and U return proper divisors for every composite n <= 2000; root bound on squarefree",
        None,
        || {
            let budget = BitBudget::default();
            for n in 4..=2000u64 {
                if oracles::is_prime(n) {
                    continue;
                }
                let t = factoring::factor_t(n, EvalBackend::Native, budget).unwrap();
                assert!(t.proper && n % t.divisor == 0, "T({n}) gave {}", t.divisor);
                let u = factoring::factor_u(n, EvalBackend::Native, budget).unwrap();
                assert!(u.proper && n % u.divisor == 0, "U({n}) gave {}", u.divisor);
                if oracles::is_squarefree(n) {
                    assert!(
                        factoring::root_bound_check(n).unwrap(),
                        "root bound fails at n={n}"
                    );
                }
            }
        },
    );
}

#[test]
fn c12_root_conjecture_survey() {
    criterion(
        12,
        "conjectured root formula vs exact floor root, m in [2,6], n in [3,500] (mismatch = CONJECTURE line)",
        None,
        || {
            let budget = BitBudget::default();
            let mut checked = 0u64;
            let mut mismatches = 0u64;
            for n in 3u64..=500 {
                for m in 2u64..=6 {
                    if m > BigUint::from(n).bits() {
                        continue;
                    }
                    let exact = factoring::floor_root(m, &BigUint::from(n)).unwrap();
                    if Pow::pow(&exact, m) == BigUint::from(n) {
                        continue;
                    }
                    checked += 1;
                    match factoring::floor_root_conjecture(m, n, budget).unwrap() {
                        RootConjectureOutcome::Agrees(v) => assert_eq!(v, exact),
                        RootConjectureOutcome::Mismatch { conjectured, exact } => {
                            // Open conjecture: report, do not fail.
                            mismatches += 1;
                            println!(
                                "CONJECTURE m={m} n={n}: conjectured {conjectured}, exact {exact}"
                            );
                        }
                    }
                }
            }
            assert!(checked > 2000, "hypothesis filter removed too much: {checked}");
            println!("conjecture survey: {checked} pairs checked, {mismatches} mismatches");
        },
    );
}

#[test]
fn c13_bit_growth_envelope() {
    criterion(
        13,
        "bits(M_chi(n)) within ±2(n+4) of 2(n+4)n² for n in [2, 60]",
        None,
        || {
            let rows = bench(BenchFormula::Chi, 60, BitBudget::default()).unwrap();
            assert_eq!(rows.len(), 59);
            for row in &rows {
                let center = 2 * (row.n + 4) * row.n * row.n;
                let slack = 2 * (row.n + 4);
                assert!(
                    row.bits_ok && row.bits + slack >= center && row.bits <= center + slack,
                    "n={}: bits {} outside {center}±{slack}",
                    row.n,
                    row.bits
                );
                assert_eq!(
                    row.value,
                    oracles::chi_largest_square_scan(row.n),
                    "value column at n={}",
                    row.n
                );
            }
            // Spot value from the envelope: n = 10 sits at 2800 ± 28.
            let n10 = rows.iter().find(|r| r.n == 10).unwrap();
            assert!((2772..=2828).contains(&n10.bits));
        },
    );
}

#[test]
fn full_term_pipeline_end_to_end_on_u() {
    // Same full-term pipeline through the U formula, pinning the branch
    // behavior: gcd branch on squarefree, chi branch otherwise.
    let budget = BitBudget::new(20_000_000);
    let u10 = factoring::factor_u(10, EvalBackend::FullTerm, budget).unwrap();
    assert_eq!((u10.divisor, u10.chi), (2, 1));
    let u50 = factoring::factor_u(50, EvalBackend::FullTerm, budget).unwrap();
    assert_eq!((u50.divisor, u50.chi), (5, 5));
    let u12 = factoring::factor_u(12, EvalBackend::FullTerm, budget).unwrap();
    assert_eq!(u12.divisor, 2);
}

#[test]
fn chi_omega_full_term_spot_checks_beyond_suites() {
    // chi at the budget edge and omega layered, against the native backend.
    let budget = BitBudget::default();
    for n in [61u64, 72, 90, 96] {
        assert_eq!(
            hypercube::chi(n, EvalBackend::FullTerm, budget).unwrap(),
            hypercube::chi(n, EvalBackend::Native, budget).unwrap(),
            "chi({n})"
        );
    }
    for n in [25u64, 30, 36] {
        // omega(36) runs the hypercube at t = 144, u = 148: ~6.14M bits.
        assert_eq!(
            hypercube::omega(n, EvalBackend::Layered, BitBudget::new(7_000_000)).unwrap(),
            oracles::omega_trial(n),
            "omega({n})"
        );
    }
}
