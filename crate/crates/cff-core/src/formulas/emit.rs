//! Emission of the closed-form building blocks as terms of the language.
//!
//! Each emitter produces a term over canonical variable names whose value
//! under a binding of those variables equals the corresponding value-level
//! operation (within that formula's validity window). The chi and omega
//! emitters delegate to the hypercube module's builders.

use crate::error::{Error, Result};
use crate::term::{CallFn, Term};

/// Identifies an emittable formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaId {
    Hw,
    Nu2,
    GcdTerm,
    Binom1,
    Binom2,
    FactorialTerm,
    Delta,
    GSeries(u64),
    PowLemma,
    Chi,
    Omega,
}

impl FormulaId {
    pub fn name(self) -> &'static str {
        match self {
            FormulaId::Hw => "hw",
            FormulaId::Nu2 => "nu2",
            FormulaId::GcdTerm => "gcd",
            FormulaId::Binom1 => "binom1",
            FormulaId::Binom2 => "binom2",
            FormulaId::FactorialTerm => "factorial",
            FormulaId::Delta => "delta",
            FormulaId::GSeries(_) => "gseries",
            FormulaId::PowLemma => "pow",
            FormulaId::Chi => "chi",
            FormulaId::Omega => "omega",
        }
    }

    /// Canonical variable names of the emitted term, in binding order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            FormulaId::Hw
            | FormulaId::Nu2
            | FormulaId::FactorialTerm
            | FormulaId::Chi
            | FormulaId::Omega => &["n"],
            FormulaId::GcdTerm | FormulaId::Binom1 | FormulaId::Binom2 | FormulaId::Delta => {
                &["a", "b"]
            }
            FormulaId::GSeries(_) => &["q", "t"],
            FormulaId::PowLemma => &["x", "m"],
        }
    }
}

/// Emits the term for `id` over its canonical variable names.
pub fn emit_term(id: FormulaId) -> Result<Term> {
    let var = Term::var;
    Ok(match id {
        FormulaId::Hw => {
            // HW(n) = ν₂(C(2n, n)) by Kummer's theorem.
            nu2_term_full(binom1_term_of(Term::from(2u64).mul(var("n")), var("n")))
        }
        FormulaId::Nu2 => nu2_term_full(var("n")),
        FormulaId::GcdTerm => gcd_term_of(var("a"), var("b")),
        FormulaId::Binom1 => binom1_term_of(var("a"), var("b")),
        FormulaId::Binom2 => binom2_term_of(var("a"), var("b")),
        FormulaId::FactorialTerm => factorial_term_of(var("n")),
        FormulaId::Delta => delta_term_of(var("a"), var("b")),
        FormulaId::GSeries(r) => g_series_term(r, var("q"), var("t"))?,
        FormulaId::PowLemma => pow_lemma_term_of(var("x"), var("m")),
        FormulaId::Chi => crate::hypercube::chi_term(),
        FormulaId::Omega => crate::hypercube::omega_term(),
    })
}

fn nat(v: u64) -> Term {
    Term::from(v)
}

/// `2^e`
pub(crate) fn pow2(e: Term) -> Term {
    nat(2).pow(e)
}

/// `2^e -. 1`
pub(crate) fn mersenne(e: Term) -> Term {
    pow2(e).monus(nat(1))
}

/// `(⌊2^(ab(ab+a+b)) / ((2^(a²b) -. 1)(2^(ab²) -. 1))⌋ % 2^(ab)) -. 1`
pub(crate) fn gcd_term_of(a: Term, b: Term) -> Term {
    let ab = a.clone().mul(b.clone());
    let e = ab.clone().mul(ab.clone().add(a.clone()).add(b.clone()));
    let den =
        mersenne(a.clone().mul(a.clone()).mul(b.clone())).mul(mersenne(a.mul(b.clone()).mul(b)));
    pow2(e).floor_div(den).modulo(pow2(ab)).monus(nat(1))
}

/// `⌊(gcd(n, 2^n))^(n+1) % (2^(n+1) -. 1)^2 / (2^(n+1) -. 1)⌋` with the inner
/// gcd expanded to its own closed form.
pub(crate) fn nu2_term_full(n: Term) -> Term {
    nu2_term_with(n.clone(), gcd_term_of(n.clone(), pow2(n)))
}

/// Same shape with the inner gcd as a native call, which keeps the term
/// evaluable when the argument is large.
pub(crate) fn nu2_term_hybrid(n: Term) -> Term {
    nu2_term_with(n.clone(), Term::call(CallFn::Gcd, vec![n.clone(), pow2(n)]))
}

fn nu2_term_with(n: Term, gcd_of_n_2n: Term) -> Term {
    let np1 = n.add(nat(1));
    let m = mersenne(np1.clone());
    gcd_of_n_2n
        .pow(np1)
        .modulo(m.clone().pow(nat(2)))
        .floor_div(m)
}

/// `⌊(2^a + 1)^a / 2^(ab)⌋ % 2^a`
pub(crate) fn binom1_term_of(a: Term, b: Term) -> Term {
    pow2(a.clone())
        .add(nat(1))
        .pow(a.clone())
        .floor_div(pow2(a.clone().mul(b)))
        .modulo(pow2(a))
}

/// `⌊2^(2(a+2)((a+1)² + b + 1)) / (2^(2(a+2)²) -. 2^(2(a+2)) -. 1)⌋ % 2^(2(a+2))`
pub(crate) fn binom2_term_of(a: Term, b: Term) -> Term {
    let l = nat(2).mul(a.clone().add(nat(2)));
    let e = l
        .clone()
        .mul(a.clone().add(nat(1)).pow(nat(2)).add(b).add(nat(1)));
    let den = pow2(l.clone().mul(a.add(nat(2))))
        .monus(pow2(l.clone()))
        .monus(nat(1));
    pow2(e).floor_div(den).modulo(pow2(l))
}

/// `⌊8^(n³) / C(8^(n²), n)⌋` with the inner binomial from [`binom1_term_of`].
pub(crate) fn factorial_term_of(n: Term) -> Term {
    let a = nat(8).pow(n.clone().pow(nat(2)));
    nat(8)
        .pow(n.clone().pow(nat(3)))
        .floor_div(binom1_term_of(a, n))
}

/// `(2^b -. 1) * ((2^b -. a) + 1)`
pub(crate) fn delta_term_of(a: Term, b: Term) -> Term {
    mersenne(b.clone()).mul(pow2(b).monus(a).add(nat(1)))
}

/// `2^(3m²x) % (2^(3mx) -. x)`
pub(crate) fn pow_lemma_term_of(x: Term, m: Term) -> Term {
    pow2(nat(3).mul(m.clone().pow(nat(2))).mul(x.clone()))
        .modulo(pow2(nat(3).mul(m).mul(x.clone())).monus(x))
}

/// Closed-form `G_r(q, t)` as a term, for r ∈ {0, 1, 2, 4}.
///
/// Valid for q >= 2 and t >= 1 (the hypercube builders only instantiate q at
/// powers of two >= 2). Mixed-sign numerators are arranged as one monus of a
/// positive part over a negative part, which is exact because the total is a
/// non-negative multiple of the denominator.
pub(crate) fn g_series_term(r: u64, q: Term, t: Term) -> Result<Term> {
    let t1 = || t.clone().monus(nat(1));
    let qp = |e: Term| q.clone().pow(e);
    let term = match r {
        0 => qp(t.clone())
            .monus(nat(1))
            .floor_div(q.clone().monus(nat(1))),
        1 => {
            // q·((t-1)·q^t + 1 -. t·q^(t-1)) / (q -. 1)^2
            let num = t1()
                .mul(qp(t.clone()))
                .add(nat(1))
                .monus(t.clone().mul(qp(t1())));
            q.clone()
                .mul(num)
                .floor_div(q.clone().monus(nat(1)).pow(nat(2)))
        }
        2 => {
            // Positive part: t1²·q^(t1+2) + q^(t1+1) + t²·q^t1
            // Negative part: (2t1² + 2t1)·q^(t1+1) + q + 1
            let pos = t1()
                .pow(nat(2))
                .mul(qp(t1().add(nat(2))))
                .add(qp(t1().add(nat(1))))
                .add(t.clone().pow(nat(2)).mul(qp(t1())));
            let neg = nat(2)
                .mul(t1().pow(nat(2)))
                .add(nat(2).mul(t1()))
                .mul(qp(t1().add(nat(1))))
                .add(q.clone())
                .add(nat(1));
            q.clone()
                .mul(pos.monus(neg))
                .floor_div(q.clone().monus(nat(1)).pow(nat(3)))
        }
        4 => {
            // Sign-split coefficients of the degree-4 closed form; every
            // polynomial below has non-negative coefficients.
            let p2 = || t1().pow(nat(2));
            let p3 = || t1().pow(nat(3));
            let p4 = || t1().pow(nat(4));
            let pos = p4()
                .mul(qp(t1().add(nat(4))))
                .add(nat(12).mul(t1()).add(nat(11)).mul(qp(t1().add(nat(1)))))
                .add(
                    nat(6)
                        .mul(p4())
                        .add(nat(12).mul(p3()))
                        .add(nat(11))
                        .mul(qp(t1().add(nat(2)))),
                )
                .add(nat(6).mul(p2()).add(nat(1)).mul(qp(t1().add(nat(3)))))
                .add(t.clone().pow(nat(4)).mul(qp(t1())));
            let neg = nat(4)
                .mul(p4())
                .add(nat(12).mul(p3()))
                .add(nat(6).mul(p2()))
                .mul(qp(t1().add(nat(1))))
                .add(
                    nat(6)
                        .mul(p2())
                        .add(nat(12).mul(t1()))
                        .mul(qp(t1().add(nat(2)))),
                )
                .add(
                    nat(4)
                        .mul(p4())
                        .add(nat(4).mul(p3()))
                        .add(nat(4).mul(t1()))
                        .mul(qp(t1().add(nat(3)))),
                )
                .add(qp(nat(3)))
                .add(nat(11).mul(qp(nat(2))))
                .add(nat(11).mul(q.clone()))
                .add(nat(1));
            q.clone()
                .mul(pos.monus(neg))
                .floor_div(q.clone().monus(nat(1)).pow(nat(5)))
        }
        other => {
            return Err(Error::UnsupportedEmission(format!(
                "G_{other} has no closed-form term here; only r in {{0, 1, 2, 4}} emit"
            )))
        }
    };
    Ok(term)
}
