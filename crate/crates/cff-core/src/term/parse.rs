//! Recursive-descent parser for the term grammar:
//!
//! ```text
//! term := sum
//! sum  := prod (("+" | "-.") prod)*
//! prod := expo (("*" | "/" | "%") expo)*
//! expo := atom ("^" expo)?
//! atom := NAT | IDENT | IDENT "(" term ("," term)* ")" | "(" term ")"
//! ```
//!
//! Whitespace-insensitive. Call heads are restricted to the reserved names.

use num_bigint::BigUint;

use super::{CallFn, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Nat(BigUint),
    Ident(String),
    Plus,
    Monus,
    Star,
    Slash,
    Percent,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let mut toks = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(at, c)) = it.peek() {
        match c {
            c if c.is_whitespace() => {
                it.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                let v = BigUint::parse_bytes(digits.as_bytes(), 10)
                    .ok_or_else(|| err(at, "invalid natural literal"))?;
                toks.push((at, Tok::Nat(v)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&(_, d)) = it.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        it.next();
                    } else {
                        break;
                    }
                }
                toks.push((at, Tok::Ident(name)));
            }
            '+' => {
                it.next();
                toks.push((at, Tok::Plus));
            }
            '-' => {
                it.next();
                match it.peek() {
                    Some(&(_, '.')) => {
                        it.next();
                        toks.push((at, Tok::Monus));
                    }
                    _ => {
                        return Err(err(
                            at,
                            "`-` must be written `-.` (monus); negative literals are not part of the language",
                        ))
                    }
                }
            }
            '∸' => {
                it.next();
                toks.push((at, Tok::Monus));
            }
            '*' => {
                it.next();
                toks.push((at, Tok::Star));
            }
            '/' => {
                it.next();
                toks.push((at, Tok::Slash));
            }
            '%' => {
                it.next();
                toks.push((at, Tok::Percent));
            }
            '^' => {
                it.next();
                toks.push((at, Tok::Caret));
            }
            '(' => {
                it.next();
                toks.push((at, Tok::LParen));
            }
            ')' => {
                it.next();
                toks.push((at, Tok::RParen));
            }
            ',' => {
                it.next();
                toks.push((at, Tok::Comma));
            }
            other => return Err(err(at, format!("unexpected character `{other}`"))),
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(at, _)| *at)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let at = self.offset();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(err(at, format!("expected {what}"))),
        }
    }

    fn sum(&mut self) -> Result<Term> {
        let mut lhs = self.prod()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    lhs = lhs.add(self.prod()?);
                }
                Some(Tok::Monus) => {
                    self.bump();
                    lhs = lhs.monus(self.prod()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn prod(&mut self) -> Result<Term> {
        let mut lhs = self.expo()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    lhs = lhs.mul(self.expo()?);
                }
                Some(Tok::Slash) => {
                    self.bump();
                    lhs = lhs.floor_div(self.expo()?);
                }
                Some(Tok::Percent) => {
                    self.bump();
                    lhs = lhs.modulo(self.expo()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn expo(&mut self) -> Result<Term> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            // Right-associative.
            return Ok(base.pow(self.expo()?));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Term> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Nat(v)) => Ok(Term::Const(v)),
            Some(Tok::Ident(name)) => {
                if let Some(Tok::LParen) = self.peek() {
                    self.bump();
                    let f = CallFn::from_name(&name).ok_or_else(|| {
                        err(at, format!("unknown function `{name}`; reserved names are floor_root, factorial, gcd, hw"))
                    })?;
                    let mut args = vec![self.sum()?];
                    while let Some(Tok::Comma) = self.peek() {
                        self.bump();
                        args.push(self.sum()?);
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    if args.len() != f.arity() {
                        return Err(err(
                            at,
                            format!("{name} takes {} argument(s), got {}", f.arity(), args.len()),
                        ));
                    }
                    Ok(Term::Call(f, args))
                } else {
                    Ok(Term::Var(name))
                }
            }
            Some(Tok::LParen) => {
                let inner = self.sum()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(err(at, "expected a natural, a variable or `(`")),
        }
    }
}

/// Parses term text into an AST.
pub fn parse(text: &str) -> Result<Term> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let t = p.sum()?;
    if p.pos != p.toks.len() {
        return Err(err(p.offset(), "trailing input after term"));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(v: u64) -> Term {
        Term::from(v)
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse("5 -. 7").unwrap(), n(5).monus(n(7)));
        assert_eq!(parse("2 ^ 3 ^ 2").unwrap(), n(2).pow(n(3).pow(n(2))));
        assert_eq!(
            parse("x * (y + 1)").unwrap(),
            Term::var("x").mul(Term::var("y").add(n(1)))
        );
        // Precedence: ^ over * over +.
        assert_eq!(
            parse("1 + 2 * 3 ^ 4").unwrap(),
            n(1).add(n(2).mul(n(3).pow(n(4))))
        );
        // Left associativity.
        assert_eq!(
            parse("8 / 2 / 2").unwrap(),
            n(8).floor_div(n(2)).floor_div(n(2))
        );
        // Monus alias and whitespace insensitivity.
        assert_eq!(parse(" 5∸7 ").unwrap(), parse("5 -. 7").unwrap());
        assert_eq!(parse("1+2*x").unwrap(), parse("1 + 2 * x").unwrap());
    }

    #[test]
    fn calls() {
        assert_eq!(
            parse("gcd(10, 6)").unwrap(),
            Term::call(CallFn::Gcd, vec![n(10), n(6)])
        );
        assert_eq!(
            parse("factorial(floor_root(2, 10))").unwrap(),
            Term::call(
                CallFn::Factorial,
                vec![Term::call(CallFn::FloorRoot, vec![n(2), n(10)])]
            )
        );
        assert!(parse("foo(1)").is_err());
        assert!(parse("gcd(1)").is_err());
        assert!(parse("hw(1, 2)").is_err());
    }

    #[test]
    fn errors_carry_position() {
        match parse("1 + $").unwrap_err() {
            Error::Parse { offset, .. } => assert_eq!(offset, 4),
            other => panic!("unexpected error {other:?}"),
        }
        // Bare minus is rejected: no negative literals.
        assert!(parse("3 - 1").is_err());
        assert!(parse("-1").is_err());
        assert!(parse("(1 + 2").is_err());
        assert!(parse("1 2").is_err());
        assert!(parse("").is_err());
    }
}
