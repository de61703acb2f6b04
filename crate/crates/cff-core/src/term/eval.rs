//! Exact evaluation of terms over arbitrary-precision naturals.
//!
//! Conventions: monus saturates at 0, `a / 0 = 0`, `a % 0 = a`, `0 ^ 0 = 1`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use super::{CallFn, Env, Term};
use crate::budget::BitBudget;
use crate::error::{Error, Result};
use crate::natops;

/// Evaluates `t` under `env` with no ceiling on intermediate sizes.
pub fn evaluate(t: &Term, env: &Env) -> Result<BigUint> {
    eval(t, env, None)
}

/// Evaluates `t` under `env`, failing with a capacity error as soon as an
/// intermediate would exceed `budget` bits.
pub fn evaluate_bounded(t: &Term, env: &Env, budget: BitBudget) -> Result<BigUint> {
    eval(t, env, Some(budget))
}

fn capacity(required_bits: u128, budget: Option<BitBudget>) -> Result<()> {
    match budget {
        Some(b) => b.check(required_bits),
        None => Ok(()),
    }
}

fn eval(t: &Term, env: &Env, budget: Option<BitBudget>) -> Result<BigUint> {
    match t {
        Term::Const(v) => Ok(v.clone()),
        Term::Var(name) => env
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnboundVariable(name.clone())),
        Term::Add(a, b) => Ok(eval(a, env, budget)? + eval(b, env, budget)?),
        Term::Monus(a, b) => {
            let a = eval(a, env, budget)?;
            let b = eval(b, env, budget)?;
            Ok(if a > b { a - b } else { BigUint::zero() })
        }
        Term::Mul(a, b) => {
            let a = eval(a, env, budget)?;
            let b = eval(b, env, budget)?;
            capacity(u128::from(a.bits()) + u128::from(b.bits()), budget)?;
            Ok(a * b)
        }
        Term::FloorDiv(a, b) => {
            let a = eval(a, env, budget)?;
            let b = eval(b, env, budget)?;
            Ok(if b.is_zero() { BigUint::zero() } else { a / b })
        }
        Term::Mod(a, b) => {
            let a = eval(a, env, budget)?;
            let b = eval(b, env, budget)?;
            Ok(if b.is_zero() { a } else { a % b })
        }
        Term::Pow(a, b) => {
            let base = eval(a, env, budget)?;
            let exp = eval(b, env, budget)?;
            if base.is_zero() {
                return Ok(if exp.is_zero() {
                    BigUint::one()
                } else {
                    BigUint::zero()
                });
            }
            if base.is_one() {
                return Ok(BigUint::one());
            }
            let exp = match exp.to_u64() {
                Some(e) => e,
                None => {
                    capacity(u128::MAX, budget)?;
                    return Err(Error::Range(format!(
                        "exponent {exp} is unreasonably large"
                    )));
                }
            };
            capacity(u128::from(base.bits()) * u128::from(exp), budget)?;
            Ok(Pow::pow(&base, exp))
        }
        Term::Call(f, args) => {
            let vals = args
                .iter()
                .map(|a| eval(a, env, budget))
                .collect::<Result<Vec<_>>>()?;
            match f {
                CallFn::FloorRoot => {
                    let m = &vals[0];
                    if m.is_zero() {
                        return Err(Error::Domain(
                            "floor_root: the 0-th root is undefined".into(),
                        ));
                    }
                    let m = m.to_u64().unwrap_or(u64::MAX);
                    Ok(natops::floor_root(m, &vals[1]))
                }
                CallFn::Factorial => {
                    let n = &vals[0];
                    if let Some(b) = budget {
                        b.check_big(&natops::factorial_bits_upper(n))?;
                    }
                    Ok(natops::factorial(natops::to_u64_or(
                        n,
                        "factorial argument",
                    )?))
                }
                CallFn::Gcd => Ok(vals[0].gcd(&vals[1])),
                CallFn::Hw => Ok(BigUint::from(vals[0].count_ones())),
            }
        }
    }
}
