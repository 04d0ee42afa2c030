//! `(n, k)`-universal sets: binary strings of length `n` whose restriction
//! to any `k` positions realizes all `2^k` patterns.
//!
//! Construction depends on `k`:
//!
//! * `k = 0`: a single all-zero string.
//! * `k = 1`: the all-zero and all-one strings.
//! * `k = 2`: the Kleitman–Spencer family. Columns are the `w`-subsets of
//!   `[N]` that contain row 0, with `w = ⌊N/2⌋` and `N` the least length
//!   giving `n` columns.
//! * `k ≥ 3`: a greedy cover of the (position-subset × pattern) constraints.
//!   Each round keeps the best of a few seeded random proposals when it
//!   covers at least the average share `U / 2^k` of the `U` open
//!   constraints, and otherwise fixes bits one at a time by conditional
//!   expectation. Either way the round covers `≥ U / 2^k`, which bounds the
//!   size by `⌈2^k · k · ln n⌉ + 2^k`.
//!
//! Every constructed set is passed through [`verify_universal`] before it
//! is returned.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::bits::{for_each_combination, BitSet};
use crate::budget::{binomial, Budget};
use crate::error::{Error, Result};

/// Proposals drawn per greedy round.
const PROPOSALS: usize = 16;

/// A set of length-`n` binary strings. Bit `i` of a string (0-based) is
/// position `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalSet {
    pub n: usize,
    pub k: usize,
    pub strings: Vec<BitSet>,
}

impl UniversalSet {
    pub fn new(n: usize, k: usize, strings: Vec<BitSet>) -> Result<Self> {
        for (i, s) in strings.iter().enumerate() {
            if s.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "string {i} has length {}, expected {n}",
                    s.len()
                )));
            }
        }
        let mut sorted: Vec<&BitSet> = strings.iter().collect();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInstance("duplicate string".into()));
        }
        Ok(UniversalSet { n, k, strings })
    }

    pub fn len(&self) -> usize {
        self.strings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    /// The strings as `'0'`/`'1'` text, position 1 first.
    pub fn to_bitstrings(&self) -> Vec<String> {
        self.strings
            .iter()
            .map(|s| (0..self.n).map(|i| if s.contains(i) { '1' } else { '0' }).collect())
            .collect()
    }

    pub fn from_bitstrings(n: usize, k: usize, rows: &[&str]) -> Result<Self> {
        let mut strings = Vec::with_capacity(rows.len());
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "row {r} has length {}, expected {n}",
                    row.len()
                )));
            }
            let mut s = BitSet::new(n);
            for (i, c) in row.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => s.insert(i),
                    _ => {
                        return Err(Error::InvalidInstance(format!(
                            "row {r}: unexpected character {c:?}"
                        )))
                    }
                }
            }
            strings.push(s);
        }
        UniversalSet::new(n, k, strings)
    }
}

/// Result of an exhaustive universality check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Universality {
    Universal,
    /// `positions` are 1-based; `pattern` lists the missing bit of each
    /// position in order.
    Missing {
        positions: Vec<usize>,
        pattern: String,
    },
}

impl Universality {
    pub fn is_universal(&self) -> bool {
        matches!(self, Universality::Universal)
    }
}

fn pattern_of(s: &BitSet, subset: &[usize]) -> usize {
    subset
        .iter()
        .enumerate()
        .fold(0, |p, (r, &i)| p | (usize::from(s.contains(i)) << r))
}

/// Pattern `p` written position by position (bit `r` of `p` is position
/// `subset[r]`).
fn pattern_text(p: usize, k: usize) -> String {
    (0..k).map(|r| if p >> r & 1 == 1 { '1' } else { '0' }).collect()
}

/// Check every `k`-subset of positions for all `2^k` patterns.
///
/// Rejects up front when `C(n,k) · 2^k` exceeds the budget. The reported
/// counterexample is the first subset in lexicographic order, with the
/// lexicographically least missing pattern.
pub fn verify_universal(us: &UniversalSet, budget: &Budget) -> Result<Universality> {
    let (n, k) = (us.n, us.k);
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    if k >= usize::BITS as usize - 1 {
        return Err(Error::InvalidParameter(format!("k = {k} is too large")));
    }
    let patterns = 1usize << k;
    budget.require(
        "universal-set verification",
        binomial(n as u64, k as u64).saturating_mul(patterns as u128),
    )?;
    let mut seen = BitSet::new(patterns);
    let mut missing = None;
    for_each_combination(n, k, |subset| {
        seen = BitSet::new(patterns);
        for s in &us.strings {
            seen.insert(pattern_of(s, subset));
        }
        if seen.is_full() {
            return true;
        }
        let pattern = (0..patterns)
            .filter(|&p| !seen.contains(p))
            .map(|p| pattern_text(p, k))
            .min()
            .unwrap_or_default();
        missing = Some(Universality::Missing {
            positions: subset.iter().map(|i| i + 1).collect(),
            pattern,
        });
        false
    });
    Ok(missing.unwrap_or(Universality::Universal))
}

/// Which size guarantee applies to `(n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Regime {
    /// `k · 2^k ≤ √n`: size at most `n`.
    Asymptotic,
    /// Anything else: size at most `⌈2^k · k · ln n⌉ + 2^k`.
    Fallback,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Recipe {
    Trivial,
    ConstantPair,
    KleitmanSpencer,
    Greedy,
}

pub fn regime(n: usize, k: usize) -> Regime {
    let lhs = (k as u128) << k.min(120);
    if lhs.saturating_mul(lhs) <= n as u128 {
        Regime::Asymptotic
    } else {
        Regime::Fallback
    }
}

/// Size guarantee of the regime `(n, k)` falls in.
pub fn size_bound(n: usize, k: usize) -> u64 {
    match regime(n, k) {
        Regime::Asymptotic => n as u64,
        Regime::Fallback => {
            let p = libm::pow(2.0, k as f64);
            let ln_n = if n > 1 { libm::log(n as f64) } else { 0.0 };
            libm::ceil(p * k as f64 * ln_n) as u64 + p as u64
        }
    }
}

fn recipe_for(k: usize) -> Recipe {
    match k {
        0 => Recipe::Trivial,
        1 => Recipe::ConstantPair,
        2 => Recipe::KleitmanSpencer,
        _ => Recipe::Greedy,
    }
}

/// Build a verified `(n, k)`-universal set.
pub fn build_universal(n: usize, k: usize, seed: u64, budget: &Budget) -> Result<UniversalSet> {
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    let strings = match recipe_for(k) {
        Recipe::Trivial => vec![BitSet::new(n)],
        Recipe::ConstantPair => vec![BitSet::new(n), BitSet::full(n)],
        Recipe::KleitmanSpencer => kleitman_spencer(n),
        Recipe::Greedy => greedy(n, k, seed, budget)?,
    };
    let us = UniversalSet::new(n, k, strings)?;
    match verify_universal(&us, budget)? {
        Universality::Universal => Ok(us),
        Universality::Missing { positions, pattern } => Err(Error::Internal(format!(
            "constructed set misses pattern {pattern} on positions {positions:?}"
        ))),
    }
}

/// Least `N` whose weight-`⌊N/2⌋` subsets of `[N]` through row 0 number at
/// least `n`; those subsets, in lexicographic order, are the columns.
fn kleitman_spencer(n: usize) -> Vec<BitSet> {
    let mut rows = 4usize;
    while binomial(rows as u64 - 1, (rows / 2) as u64 - 1) < n as u128 {
        rows += 1;
    }
    let w = rows / 2;
    let mut strings = vec![BitSet::new(n); rows];
    let mut col = 0;
    for_each_combination(rows - 1, w - 1, |rest| {
        if col == n {
            return false;
        }
        strings[0].insert(col);
        for &r in rest {
            strings[r + 1].insert(col);
        }
        col += 1;
        true
    });
    let mut out: Vec<BitSet> = Vec::with_capacity(rows);
    for s in strings {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

struct Constraints {
    n: usize,
    k: usize,
    words: usize,
    covered: Vec<u64>,
    open: u128,
}

impl Constraints {
    fn new(n: usize, k: usize) -> Self {
        let subsets = binomial(n as u64, k as u64) as usize;
        let words = (1usize << k).div_ceil(64);
        Constraints {
            n,
            k,
            words,
            covered: vec![0; subsets * words],
            open: (subsets as u128) << k,
        }
    }

    #[inline]
    fn is_covered(&self, idx: usize, p: usize) -> bool {
        self.covered[idx * self.words + p / 64] >> (p % 64) & 1 == 1
    }

    fn gain(&self, s: &BitSet) -> u128 {
        let mut gain = 0u128;
        let mut idx = 0;
        for_each_combination(self.n, self.k, |subset| {
            if !self.is_covered(idx, pattern_of(s, subset)) {
                gain += 1;
            }
            idx += 1;
            true
        });
        gain
    }

    fn accept(&mut self, s: &BitSet) {
        let mut idx = 0;
        let words = self.words;
        let mut newly = 0u128;
        let covered = &mut self.covered;
        for_each_combination(self.n, self.k, |subset| {
            let p = pattern_of(s, subset);
            let w = &mut covered[idx * words + p / 64];
            if *w >> (p % 64) & 1 == 0 {
                *w |= 1 << (p % 64);
                newly += 1;
            }
            idx += 1;
            true
        });
        self.open -= newly;
    }

    fn first_open(&self) -> Option<(Vec<usize>, usize)> {
        let mut idx = 0;
        let mut found = None;
        for_each_combination(self.n, self.k, |subset| {
            for p in 0..1usize << self.k {
                if !self.is_covered(idx, p) {
                    found = Some((subset.to_vec(), p));
                    return false;
                }
            }
            idx += 1;
            true
        });
        found
    }

    /// Fix bits left to right, each time keeping the value with the larger
    /// expected number of newly covered constraints under a uniform
    /// completion. Weights are scaled by `2^k` to stay integral.
    fn derandomized(&self) -> BitSet {
        let mut fixed: Vec<Option<bool>> = vec![None; self.n];
        for pos in 0..self.n {
            let mut score = [0u128; 2];
            for (v, slot) in score.iter_mut().enumerate() {
                fixed[pos] = Some(v == 1);
                *slot = self.expected(&fixed);
            }
            fixed[pos] = Some(score[1] > score[0]);
        }
        let mut s = BitSet::new(self.n);
        for (i, b) in fixed.iter().enumerate() {
            s.set(i, b.unwrap_or(false));
        }
        s
    }

    fn expected(&self, fixed: &[Option<bool>]) -> u128 {
        let mut total = 0u128;
        let mut idx = 0;
        for_each_combination(self.n, self.k, |subset| {
            let mut mask = 0usize;
            let mut value = 0usize;
            for (r, &i) in subset.iter().enumerate() {
                if let Some(b) = fixed[i] {
                    mask |= 1 << r;
                    value |= usize::from(b) << r;
                }
            }
            let weight = 1u128 << mask.count_ones();
            for p in 0..1usize << self.k {
                if p & mask == value && !self.is_covered(idx, p) {
                    total += weight;
                }
            }
            idx += 1;
            true
        });
        total
    }
}

fn random_string(n: usize, rng: &mut ChaCha8Rng) -> BitSet {
    let mut s = BitSet::new(n);
    let mut word = 0u64;
    for i in 0..n {
        if i % 64 == 0 {
            word = rng.next_u64();
        }
        s.set(i, word >> (i % 64) & 1 == 1);
    }
    s
}

fn greedy(n: usize, k: usize, seed: u64, budget: &Budget) -> Result<Vec<BitSet>> {
    if k >= 20 {
        return Err(Error::InvalidParameter(format!("k = {k} is too large for the greedy builder")));
    }
    let total = binomial(n as u64, k as u64).saturating_mul(1u128 << k);
    budget.require("greedy universal-set construction", total)?;
    let mut cons = Constraints::new(n, k);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut strings = Vec::new();
    let subsets = binomial(n as u64, k as u64) as u64;
    while cons.open > 0 {
        budget.charge("greedy universal-set construction", subsets * (PROPOSALS as u64 + 2))?;
        let threshold = |gain: u128, open: u128| gain << k >= open;
        let mut best: Option<(u128, BitSet)> = None;
        for _ in 0..PROPOSALS {
            let s = random_string(n, &mut rng);
            let g = cons.gain(&s);
            if best.as_ref().is_none_or(|(bg, _)| g > *bg) {
                best = Some((g, s));
            }
        }
        let (mut gain, mut pick) = best.expect("at least one proposal");
        if !threshold(gain, cons.open) {
            if let Some((subset, p)) = cons.first_open() {
                let mut s = random_string(n, &mut rng);
                for (r, &i) in subset.iter().enumerate() {
                    s.set(i, p >> r & 1 == 1);
                }
                let g = cons.gain(&s);
                if g > gain {
                    gain = g;
                    pick = s;
                }
            }
        }
        if !threshold(gain, cons.open) {
            budget.charge("greedy universal-set construction", total as u64 * 2 * n as u64)?;
            pick = cons.derandomized();
        }
        cons.accept(&pick);
        strings.push(pick);
    }
    Ok(strings)
}

/// Regime, recipe and achieved size versus the applicable bound.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SizeReport {
    pub n: usize,
    pub k: usize,
    pub regime: Regime,
    pub recipe: Recipe,
    pub size: usize,
    /// `n` in the asymptotic regime, the ln-factor bound otherwise.
    pub bound: u64,
}

impl SizeReport {
    pub fn within_bound(&self) -> bool {
        self.size as u64 <= self.bound
    }
}

pub fn size_bound_report(n: usize, k: usize, seed: u64, budget: &Budget) -> Result<SizeReport> {
    let us = build_universal(n, k, seed, budget)?;
    Ok(SizeReport {
        n,
        k,
        regime: regime(n, k),
        recipe: recipe_for(k),
        size: us.len(),
        bound: size_bound(n, k),
    })
}
