use num_bigint::BigUint;

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Cap on the number of raw points any exhaustive enumeration may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(DEFAULT_BUDGET)
    }
}

impl Budget {
    pub fn check(&self, what: &str, needed: &BigUint) -> Result<()> {
        if *needed > BigUint::from(self.0) {
            return Err(Error::Budget {
                what: what.to_string(),
                needed: needed.to_string(),
                budget: self.0,
            });
        }
        Ok(())
    }

    /// `base^exp` checked against the budget, returned as a machine integer.
    pub fn check_pow(&self, what: &str, base: u64, exp: u64) -> Result<u64> {
        let needed = num_traits::pow(BigUint::from(base), exp as usize);
        self.check(what, &needed)?;
        Ok(u64::try_from(needed).expect("within budget"))
    }
}
