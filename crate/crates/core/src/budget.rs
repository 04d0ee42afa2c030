use core::cell::Cell;

use crate::error::{Error, Result};

/// Default limit on elementary checks for exhaustive searches.
pub const DEFAULT_WORK_BUDGET: u64 = 100_000_000;

/// Default limit on the number of universe elements a reduction may emit.
pub const DEFAULT_SIZE_BUDGET: u64 = 10_000_000;

/// A work counter shared by a single search. Exceeding the limit is an
/// error, never a silent truncation.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    spent: Cell<u64>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            spent: Cell::new(0),
        }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn spent(&self) -> u64 {
        self.spent.get()
    }

    /// Reject up front when a search of `needed` steps cannot fit.
    pub fn require(&self, what: &'static str, needed: u128) -> Result<()> {
        if needed > self.limit as u128 {
            return Err(Error::BudgetExceeded {
                what,
                needed,
                budget: self.limit,
            });
        }
        Ok(())
    }

    /// Charge `steps` against the remaining budget.
    pub fn charge(&self, what: &'static str, steps: u64) -> Result<()> {
        let spent = self.spent.get().saturating_add(steps);
        self.spent.set(spent);
        if spent > self.limit {
            return Err(Error::BudgetExceeded {
                what,
                needed: spent as u128,
                budget: self.limit,
            });
        }
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_WORK_BUDGET)
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: u128, exp: u64) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
        if acc == 0 {
            return Some(0);
        }
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(64, 3), 41_664);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
    }

    #[test]
    fn charge_fails_loudly() {
        let b = Budget::new(10);
        b.charge("x", 6).unwrap();
        assert!(b.charge("x", 5).is_err());
        assert!(b.require("y", 11).is_err());
        assert!(b.require("y", 10).is_ok());
    }

    #[test]
    fn pow_overflow() {
        assert_eq!(checked_pow(3, 4), Some(81));
        assert_eq!(checked_pow(0, 3), Some(0));
        assert_eq!(checked_pow(24, 64), None);
    }
}
