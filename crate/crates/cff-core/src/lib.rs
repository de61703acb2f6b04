//! Closed-form factoring toolkit.
//!
//! Everything here revolves around fixed-length closed-form expressions
//! ("arithmetic terms") over the naturals with the operations
//! `+  -.  *  /  %  ^`, where `-.` is monus (truncated subtraction). The
//! crate provides:
//!
//! - [`term`]: the term language itself — grammar, exact evaluator over
//!   arbitrary-precision naturals, canonical printer, size statistics;
//! - [`formulas`]: the number-theoretic building blocks (Hamming weight,
//!   ν₂, gcd, two binomial formulas, factorial, the δ block encoder,
//!   generalized geometric series G_r, and the x^m power identity) as both
//!   exact value-level pipelines and emitted terms;
//! - [`hypercube`]: solution counting for simple exponential polynomials
//!   over a box via the Hamming weight of one huge integer M, specialized to
//!   χ(n) (largest square-root divisor) and ω(n) (distinct prime count);
//! - [`factoring`]: the divisor formulas `T(n) = gcd(n/χ(n), ⌊n^(1/ω)⌋!)`
//!   and its monus-branched variant U(n), which return a non-trivial divisor
//!   of every composite n, plus floor roots, the root-bound check and the
//!   nine-variable witness equation;
//! - [`oracles`]: independent brute-force ground truth (enumeration, trial
//!   division, residue counting) that every formula is checked against;
//! - [`verify`]: named verification suites and the bit-growth benchmark
//!   driving the `cff` command-line tool.
//!
//! Evaluating these expressions is exponential-time by nature — intermediate
//! integers reach millions of bits — so every term-backed operation checks
//! its dominant exponent against a configurable [`budget::BitBudget`] and
//! fails with a capacity error instead of exhausting memory.

#![forbid(unsafe_code)]

pub mod budget;
pub mod error;
pub mod factoring;
pub mod formulas;
pub mod hypercube;
mod natops;
pub mod oracles;
pub mod term;
pub mod verify;

pub use budget::BitBudget;
pub use error::{Error, Result};
pub use formulas::{EvalBackend, FormulaId};
pub use term::{Env, Term};

pub use num_bigint::{BigInt, BigUint};
