use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};

/// Default ceiling on the bit length of intermediate values: 2·10⁶ bits.
pub const DEFAULT_BIT_BUDGET: u64 = 2_000_000;

/// Name of the environment variable that overrides the default ceiling.
pub const BIT_BUDGET_ENV: &str = "CFF_BIT_BUDGET";

/// Ceiling on the bit length of the dominant intermediate of a formula.
///
/// Every term-backed operation computes its dominant exponent up front and
/// checks it against this ceiling instead of silently exhausting memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BitBudget(u64);

impl BitBudget {
    pub const fn new(bits: u64) -> Self {
        BitBudget(bits)
    }

    /// Reads `CFF_BIT_BUDGET` from the environment, falling back to the
    /// default ceiling when unset or unparseable.
    pub fn from_env() -> Self {
        match std::env::var(BIT_BUDGET_ENV) {
            Ok(v) => v.trim().parse().map(BitBudget).unwrap_or_default(),
            Err(_) => BitBudget::default(),
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn check(self, required_bits: u128) -> Result<()> {
        if required_bits > self.0 as u128 {
            return Err(Error::Capacity {
                required_bits: BigUint::from(required_bits),
                budget_bits: self.0,
            });
        }
        Ok(())
    }

    /// Same as [`check`](Self::check) for requirements that may not fit `u128`.
    pub fn check_big(self, required_bits: &BigUint) -> Result<()> {
        match required_bits.to_u64() {
            Some(r) if r <= self.0 => Ok(()),
            _ => Err(Error::Capacity {
                required_bits: required_bits.clone(),
                budget_bits: self.0,
            }),
        }
    }
}

impl Default for BitBudget {
    fn default() -> Self {
        BitBudget(DEFAULT_BIT_BUDGET)
    }
}
