//! k-SUM to a family of vector-sum instances via base-`p` digits.
//!
//! After the shift `y = x + R` the target is `t = k·R` and all values lie in
//! `[0, M]`, `M = 2R`. For a carry vector `c ∈ [0, k]^{d−1}` (with
//! `c_{−1} = c_{d−1} = 0`) coordinate `r` of the image of `y` is
//! `k·y_r − t_r + c_{r−1} − p·c_r`, where `y_r`, `t_r` are base-`p` digits.
//! A selection sums to `t` iff, for its actual carries, every coordinate of
//! the image sum vanishes.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::budget::checked_pow;
use crate::error::{Error, Result};
use crate::model::VectorSumInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DigitParams {
    pub k: usize,
    /// Input magnitude bound `R`.
    pub r: i64,
    pub p: u64,
    pub d: usize,
}

impl DigitParams {
    /// Smallest `d` with `p^d ≥ k·M + 1`, `p = k + 1` unless given.
    pub fn choose(k: usize, r: i64, p: Option<u64>, d: Option<usize>) -> Result<Self> {
        let p = p.unwrap_or(k as u64 + 1);
        let need = k as u128 * 2 * r.max(0) as u128 + 1;
        let d = match d {
            Some(d) => d,
            None => {
                let mut d = 1;
                while checked_pow(p as u128, d as u64).is_some_and(|v| v < need) && p >= 2 {
                    d += 1;
                }
                d
            }
        };
        let params = DigitParams { k, r, p, d };
        params.check()?;
        Ok(params)
    }

    pub fn check(&self) -> Result<()> {
        let mut broken = Vec::new();
        if self.k == 0 {
            broken.push(format!("k = {} must be at least 1", self.k));
        }
        if self.r < 0 {
            broken.push(format!("R = {} must be non-negative", self.r));
        }
        if self.p <= self.k as u64 {
            broken.push(format!("k < p fails: k = {}, p = {}", self.k, self.p));
        }
        if self.d == 0 {
            broken.push("d must be at least 1".into());
        }
        let need = self.k as u128 * 2 * self.r.max(0) as u128 + 1;
        if checked_pow(self.p as u128, self.d as u64).is_some_and(|v| v < need) {
            broken.push(format!(
                "p^d ≥ k·M + 1 fails: {}^{} < {need}",
                self.p, self.d
            ));
        }
        if broken.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidParameter(broken.join("; ")))
        }
    }

    /// `s = (k+1)^{d−1}`.
    pub fn count(&self) -> Option<u128> {
        checked_pow(self.k as u128 + 1, self.d as u64 - 1)
    }

    fn digits(&self, mut y: u128) -> Vec<i64> {
        (0..self.d)
            .map(|_| {
                let digit = (y % self.p as u128) as i64;
                y /= self.p as u128;
                digit
            })
            .collect()
    }

    /// Carry vector number `index`, least significant carry first.
    pub fn carries(&self, mut index: u128) -> Vec<i64> {
        (0..self.d - 1)
            .map(|_| {
                let c = (index % (self.k as u128 + 1)) as i64;
                index /= self.k as u128 + 1;
                c
            })
            .collect()
    }

    /// Image of input `x` under the mapping with carries `c`.
    pub fn map(&self, x: i64, carries: &[i64]) -> Vec<i64> {
        let y = self.digits((x + self.r) as u128);
        let t = self.digits(self.k as u128 * self.r as u128);
        let k = self.k as i64;
        let p = self.p as i64;
        (0..self.d)
            .map(|r| {
                let c_in = if r == 0 { 0 } else { carries[r - 1] };
                let c_out = if r + 1 == self.d { 0 } else { carries[r] };
                k * y[r] - t[r] + c_in - p * c_out
            })
            .collect()
    }
}

/// One vector-sum instance per carry vector, `s = (k+1)^{d−1}` in all.
/// Each instance's bound is the largest absolute entry it contains.
pub fn ksum_to_vectorsum(lists: &[Vec<i64>], params: &DigitParams, size_budget: u64) -> Result<Vec<VectorSumInstance>> {
    params.check()?;
    if lists.len() != params.k {
        return Err(Error::DimensionMismatch(format!(
            "{} lists for k = {}",
            lists.len(),
            params.k
        )));
    }
    for (i, l) in lists.iter().enumerate() {
        if let Some(x) = l.iter().find(|x| x.abs() > params.r) {
            return Err(Error::InvalidInstance(format!(
                "list {i}: {x} outside [-{}, {}]",
                params.r, params.r
            )));
        }
    }
    let s = params.count().filter(|&s| s <= size_budget as u128).ok_or_else(|| {
        Error::SizeExceeded {
            what: "mapping count (k+1)^(d-1)",
            size: format!("{}^{}", params.k + 1, params.d - 1),
            budget: size_budget,
        }
    })?;
    Ok((0..s)
        .map(|index| {
            let carries = params.carries(index);
            let mapped: Vec<Vec<Vec<i64>>> = lists
                .iter()
                .map(|l| l.iter().map(|&x| params.map(x, &carries)).collect())
                .collect();
            let bound = mapped
                .iter()
                .flatten()
                .flatten()
                .map(|v| v.abs())
                .max()
                .unwrap_or(0);
            VectorSumInstance {
                k: params.k,
                dim: params.d,
                bound,
                lists: mapped,
            }
        })
        .collect())
}

/// Largest absolute entry any mapping can produce: `(k+1)·p − 1`.
pub fn entry_range(params: &DigitParams) -> (i64, i64) {
    let (k, p) = (params.k as i64, params.p as i64);
    (-(k + 1) * p + 1, k * p)
}

/// Index of the carry vector realized by a selection (inputs as given).
pub fn realized_carries(params: &DigitParams, picks: &[i64]) -> u128 {
    let mut carries = vec![0i64; params.d.saturating_sub(1)];
    let mut carry = 0u128;
    for (r, slot) in carries.iter_mut().enumerate() {
        let sum: u128 = picks
            .iter()
            .map(|&x| params.digits((x + params.r) as u128)[r] as u128)
            .sum::<u128>()
            + carry;
        carry = sum / params.p as u128;
        *slot = carry as i64;
    }
    carries
        .iter()
        .rev()
        .fold(0u128, |acc, &c| acc * (params.k as u128 + 1) + c as u128)
}
