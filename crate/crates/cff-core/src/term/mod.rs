//! The arithmetic-term language: AST, grammar, exact evaluator and printer.
//!
//! Terms are built from natural-number constants, variables and the binary
//! operations `+`, `-.` (monus, i.e. `max(a - b, 0)`), `*`, `/` (floor
//! division), `%` and `^`. The canonical text form uses `-.` for monus; the
//! Unicode `∸` is accepted as an input alias. A small set of reserved call
//! nodes (`floor_root`, `factorial`, `gcd`, `hw`) extends the grammar for
//! layered pipelines whose full term expansion would be infeasible to
//! evaluate.

mod eval;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;

pub use eval::{evaluate, evaluate_bounded};
pub use parse::parse;

/// Named native operations allowed as call nodes in hybrid terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CallFn {
    FloorRoot,
    Factorial,
    Gcd,
    Hw,
}

impl CallFn {
    pub fn name(self) -> &'static str {
        match self {
            CallFn::FloorRoot => "floor_root",
            CallFn::Factorial => "factorial",
            CallFn::Gcd => "gcd",
            CallFn::Hw => "hw",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            CallFn::FloorRoot | CallFn::Gcd => 2,
            CallFn::Factorial | CallFn::Hw => 1,
        }
    }

    pub fn from_name(name: &str) -> Option<CallFn> {
        match name {
            "floor_root" => Some(CallFn::FloorRoot),
            "factorial" => Some(CallFn::Factorial),
            "gcd" => Some(CallFn::Gcd),
            "hw" => Some(CallFn::Hw),
            _ => None,
        }
    }
}

/// AST of the arithmetic-term language over the naturals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Const(BigUint),
    Var(String),
    Add(Box<Term>, Box<Term>),
    Monus(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
    FloorDiv(Box<Term>, Box<Term>),
    Mod(Box<Term>, Box<Term>),
    Pow(Box<Term>, Box<Term>),
    Call(CallFn, Vec<Term>),
}

impl Term {
    pub fn nat(v: impl Into<BigUint>) -> Term {
        Term::Const(v.into())
    }

    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    // Owned builders, not std::ops impls: these construct syntax, they do
    // not compute, and `t.add(u)` next to `t.pow(u)` keeps that visible.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, rhs: Term) -> Term {
        Term::Add(Box::new(self), Box::new(rhs))
    }

    pub fn monus(self, rhs: Term) -> Term {
        Term::Monus(Box::new(self), Box::new(rhs))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: Term) -> Term {
        Term::Mul(Box::new(self), Box::new(rhs))
    }

    pub fn floor_div(self, rhs: Term) -> Term {
        Term::FloorDiv(Box::new(self), Box::new(rhs))
    }

    pub fn modulo(self, rhs: Term) -> Term {
        Term::Mod(Box::new(self), Box::new(rhs))
    }

    pub fn pow(self, rhs: Term) -> Term {
        Term::Pow(Box::new(self), Box::new(rhs))
    }

    pub fn call(f: CallFn, args: Vec<Term>) -> Term {
        debug_assert_eq!(args.len(), f.arity());
        Term::Call(f, args)
    }

    /// Canonical text form; `parse(render(t))` reconstructs `t` exactly.
    pub fn render(&self) -> String {
        self.to_string()
    }

    pub fn stats(&self) -> TermStats {
        fn walk(t: &Term) -> TermStats {
            let children: &[&Term] = &match t {
                Term::Const(_) | Term::Var(_) => vec![],
                Term::Add(a, b)
                | Term::Monus(a, b)
                | Term::Mul(a, b)
                | Term::FloorDiv(a, b)
                | Term::Mod(a, b)
                | Term::Pow(a, b) => vec![a.as_ref(), b.as_ref()],
                Term::Call(_, args) => args.iter().collect(),
            };
            let mut s = TermStats {
                node_count: 1,
                depth: 1,
                pow_count: u64::from(matches!(t, Term::Pow(_, _))),
            };
            for c in children {
                let cs = walk(c);
                s.node_count += cs.node_count;
                s.depth = s.depth.max(cs.depth + 1);
                s.pow_count += cs.pow_count;
            }
            s
        }
        walk(self)
    }

    fn precedence(&self) -> u8 {
        match self {
            Term::Add(_, _) | Term::Monus(_, _) => 1,
            Term::Mul(_, _) | Term::FloorDiv(_, _) | Term::Mod(_, _) => 2,
            Term::Pow(_, _) => 3,
            Term::Const(_) | Term::Var(_) | Term::Call(_, _) => 4,
        }
    }
}

impl From<u64> for Term {
    fn from(v: u64) -> Term {
        Term::Const(BigUint::from(v))
    }
}

impl From<BigUint> for Term {
    fn from(v: BigUint) -> Term {
        Term::Const(v)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn child(f: &mut fmt::Formatter<'_>, c: &Term, parens: bool) -> fmt::Result {
            if parens {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        }
        // Left-associative operators parenthesize a right child of equal
        // precedence; `^` is right-associative and does the reverse.
        let p = self.precedence();
        match self {
            Term::Const(v) => write!(f, "{v}"),
            Term::Var(name) => write!(f, "{name}"),
            Term::Call(c, args) => {
                write!(f, "{}(", c.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Term::Pow(a, b) => {
                child(f, a, a.precedence() <= p)?;
                write!(f, " ^ ")?;
                child(f, b, b.precedence() < p)
            }
            Term::Add(a, b)
            | Term::Monus(a, b)
            | Term::Mul(a, b)
            | Term::FloorDiv(a, b)
            | Term::Mod(a, b) => {
                let op = match self {
                    Term::Add(_, _) => "+",
                    Term::Monus(_, _) => "-.",
                    Term::Mul(_, _) => "*",
                    Term::FloorDiv(_, _) => "/",
                    _ => "%",
                };
                child(f, a, a.precedence() < p)?;
                write!(f, " {op} ")?;
                child(f, b, b.precedence() <= p)
            }
        }
    }
}

/// Size statistics of a term, backing the fixed-operation-count claims.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermStats {
    pub node_count: u64,
    pub depth: u64,
    pub pow_count: u64,
}

/// Variable bindings for evaluation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Env(BTreeMap<String, BigUint>);

impl Env {
    pub fn new() -> Env {
        Env::default()
    }

    pub fn bind(mut self, name: impl Into<String>, value: impl Into<BigUint>) -> Env {
        self.0.insert(name.into(), value.into());
        self
    }

    pub fn get(&self, name: &str) -> Option<&BigUint> {
        self.0.get(name)
    }
}

impl<N: Into<String>, V: Into<BigUint>> FromIterator<(N, V)> for Env {
    fn from_iter<I: IntoIterator<Item = (N, V)>>(iter: I) -> Env {
        Env(iter
            .into_iter()
            .map(|(n, v)| (n.into(), v.into()))
            .collect())
    }
}
