//! Gap-gadgets defined by an `m × n` matrix over `[h]`.
//!
//! Group `i` of the A side holds one vertex per label vector in `[h]^k`
//! (lexicographic order, first coordinate most significant). Part `j` of
//! the B side is `[n]`. A vertex with labels `a` in group `i` is adjacent to
//! `b ∈ B_j` exactly when `M[i][b] = a[j]`; the edge list is never stored.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::bits::{for_each_combination, for_each_tuple};
use crate::budget::{binomial, checked_pow, Budget};
use crate::error::{Error, Result};
use crate::universal::build_universal;

/// Default ε in the reported gadget regime condition.
pub const DEFAULT_EPSILON: f64 = 0.1;

/// Largest `ℓ = h^k` the builder accepts.
pub const MAX_ELL: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapGadget {
    pub k: usize,
    pub n: usize,
    pub m: usize,
    pub ell: usize,
    pub h: usize,
    /// `m` rows of `n` entries, each in `1..=h`.
    pub matrix: Vec<Vec<u32>>,
}

/// A vertex of group `group` with label vector `labels ∈ [h]^k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct AVertex {
    pub group: usize,
    pub labels: Vec<u32>,
}

/// Vertex `index` of part `part` on the B side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BVertex {
    pub part: usize,
    pub index: usize,
}

/// First matrix entry outside `[h]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M1Violation {
    pub row: usize,
    pub col: usize,
    pub value: u32,
}

impl GapGadget {
    /// A gadget over an explicit matrix; checks shape, `ℓ = h^k` and M1.
    pub fn new(k: usize, n: usize, h: usize, matrix: Vec<Vec<u32>>) -> Result<Self> {
        if k == 0 || n == 0 || h == 0 || matrix.is_empty() {
            return Err(Error::InvalidParameter(
                "k, n, h and m must all be at least 1".into(),
            ));
        }
        let ell = label_count(h, k)?;
        if let Some(r) = matrix.iter().position(|row| row.len() != n) {
            return Err(Error::DimensionMismatch(format!(
                "matrix row {r} has {} entries, expected {n}",
                matrix[r].len()
            )));
        }
        let g = GapGadget {
            k,
            n,
            m: matrix.len(),
            ell,
            h,
            matrix,
        };
        if let Some(v) = g.check_m1() {
            return Err(Error::InvalidInstance(format!(
                "matrix entry ({}, {}) = {} outside [1, {}]",
                v.row, v.col, v.value, h
            )));
        }
        Ok(g)
    }

    pub fn check_m1(&self) -> Option<M1Violation> {
        for (row, r) in self.matrix.iter().enumerate() {
            for (col, &value) in r.iter().enumerate() {
                if value == 0 || value as usize > self.h {
                    return Some(M1Violation { row, col, value });
                }
            }
        }
        None
    }

    /// Label vector of the A-vertex with canonical index `a` in `0..ℓ`.
    pub fn labels(&self, a: usize) -> Vec<u32> {
        let mut labels = vec![0u32; self.k];
        let mut rest = a;
        for j in (0..self.k).rev() {
            labels[j] = (rest % self.h) as u32 + 1;
            rest /= self.h;
        }
        labels
    }

    /// Canonical index of a label vector.
    pub fn label_index(&self, labels: &[u32]) -> usize {
        labels
            .iter()
            .fold(0, |acc, &l| acc * self.h + (l as usize - 1))
    }

    /// All label vectors in canonical order.
    pub fn label_table(&self) -> Vec<Vec<u32>> {
        (0..self.ell).map(|a| self.labels(a)).collect()
    }

    pub fn avertex(&self, group: usize, a: usize) -> AVertex {
        AVertex {
            group,
            labels: self.labels(a),
        }
    }

    #[inline]
    pub fn adjacent_labels(&self, group: usize, labels: &[u32], part: usize, index: usize) -> bool {
        self.matrix[group][index] == labels[part]
    }

    /// The label vector read off row `group` at `b₁..b_k`; it is adjacent to
    /// every `b_j`.
    pub fn row_witness(&self, group: usize, b: &[usize]) -> AVertex {
        AVertex {
            group,
            labels: b.iter().map(|&c| self.matrix[group][c]).collect(),
        }
    }
}

fn label_count(h: usize, k: usize) -> Result<usize> {
    match checked_pow(h as u128, k as u64) {
        Some(v) if v <= MAX_ELL as u128 => Ok(v as usize),
        _ => Err(Error::InvalidParameter(format!(
            "ℓ = h^k = {h}^{k} exceeds {MAX_ELL}"
        ))),
    }
}

/// Adjacency with range checks.
pub fn adjacent(g: &GapGadget, a: &AVertex, b: &BVertex) -> Result<bool> {
    if a.group >= g.m {
        return Err(Error::OutOfRange(format!("group {} ≥ m = {}", a.group, g.m)));
    }
    if a.labels.len() != g.k || a.labels.iter().any(|&l| l == 0 || l as usize > g.h) {
        return Err(Error::OutOfRange(format!(
            "labels {:?} not in [{}]^{}",
            a.labels, g.h, g.k
        )));
    }
    if b.part >= g.k || b.index >= g.n {
        return Err(Error::OutOfRange(format!(
            "B vertex ({}, {}) outside {} parts of width {}",
            b.part, b.index, g.k, g.n
        )));
    }
    Ok(g.adjacent_labels(a.group, &a.labels, b.part, b.index))
}

/// Round a requested gap down to a power of two; returns `(h, log₂ h)`.
pub fn effective_h(requested: usize) -> Result<(usize, usize)> {
    if requested < 2 {
        return Err(Error::InvalidParameter(format!(
            "h = {requested}: h must be at least 2"
        )));
    }
    let t = (usize::BITS - 1 - requested.leading_zeros()) as usize;
    Ok((1 << t, t))
}

/// How a matrix was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case", tag = "kind"))]
pub enum MatrixRecipe {
    /// Rows are `t`-bit block slicings of an `(n·t, h·t)`-universal set of
    /// `strings` strings, repeated cyclically up to `n·t` rows.
    UniversalSet { strings: usize },
    /// Rows chosen greedily until every column set of size `min(h, n)` is
    /// rainbow in some row, repeated cyclically up to `n·t` rows.
    RainbowGreedy { rows: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuiltMatrix {
    pub rows: Vec<Vec<u32>>,
    pub recipe: MatrixRecipe,
}

/// Build an `m × n` matrix over `[h]`, `h = 2^t`, with `m = n·t` whenever
/// the construction allows it.
///
/// The universal-set route is used when an `(n·t, h·t)`-universal set fits
/// the budget and has at most `n·t` strings; otherwise rows are chosen
/// greedily to make column sets rainbow. Both results are checked against
/// M2 before they are returned.
pub fn build_matrix(n: usize, h: usize, t: usize, seed: u64, budget: &Budget) -> Result<BuiltMatrix> {
    if t == 0 || t >= usize::BITS as usize || h != 1 << t {
        return Err(Error::InvalidParameter(format!("h = {h}: h must be 2^t with t = {t}")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let len = n * t;
    let width = (h * t).min(len);
    // a universal set has at least 2^width strings
    let feasible = width < 64 && 1u64 << width <= len as u64;
    let attempt = feasible.then(|| build_universal(len, width, seed, &Budget::new(budget.limit())));
    let (mut rows, recipe) = match attempt {
        Some(Ok(us)) if us.len() <= len => {
            let rows: Vec<Vec<u32>> = us
                .strings
                .iter()
                .map(|s| (0..n).map(|c| s.field(c * t, t) as u32 + 1).collect())
                .collect();
            (rows, MatrixRecipe::UniversalSet { strings: us.len() })
        }
        Some(Err(e)) if !e.is_budget() => return Err(e),
        _ => rainbow_route(n, h, seed, budget)?,
    };
    let base = rows.len();
    for r in base..len {
        let copy = rows[r % base].clone();
        rows.push(copy);
    }
    match verify_m2(&rows, h, budget)? {
        M2Check::Holds => Ok(BuiltMatrix { rows, recipe }),
        M2Check::Fails { columns } => Err(Error::Internal(format!(
            "constructed matrix has no rainbow row for columns {columns:?}"
        ))),
    }
}

fn rainbow_route(n: usize, h: usize, seed: u64, budget: &Budget) -> Result<(Vec<Vec<u32>>, MatrixRecipe)> {
    let rows = rainbow_greedy(n, h, seed, budget)?;
    let count = rows.len();
    Ok((rows, MatrixRecipe::RainbowGreedy { rows: count }))
}

fn all_distinct(row: &[u32], cols: &[usize]) -> bool {
    for (x, &a) in cols.iter().enumerate() {
        for &b in &cols[..x] {
            if row[a] == row[b] {
                return false;
            }
        }
    }
    true
}

fn rainbow_greedy(n: usize, h: usize, seed: u64, budget: &Budget) -> Result<Vec<Vec<u32>>> {
    let c = h.min(n);
    if c <= 1 {
        return Ok(vec![vec![1; n]]);
    }
    let count = binomial(n as u64, c as u64);
    budget.require("rainbow row construction", count.saturating_mul(c as u128))?;
    let mut open: Vec<Vec<usize>> = Vec::with_capacity(count as usize);
    for_each_combination(n, c, |cols| {
        open.push(cols.to_vec());
        true
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mask = h as u64 - 1;
    let random_row = |rng: &mut ChaCha8Rng| -> Vec<u32> {
        (0..n).map(|_| (rng.next_u64() & mask) as u32 + 1).collect()
    };
    let mut rows = Vec::new();
    while !open.is_empty() {
        budget.charge("rainbow row construction", (open.len() * c * 17) as u64)?;
        let mut best: Option<(usize, Vec<u32>)> = None;
        for _ in 0..16 {
            let row = random_row(&mut rng);
            let gain = open.iter().filter(|cols| all_distinct(&row, cols)).count();
            if best.as_ref().is_none_or(|(g, _)| gain > *g) {
                best = Some((gain, row));
            }
        }
        let (gain, mut row) = best.expect("proposals drawn");
        if gain == 0 {
            row = random_row(&mut rng);
            for (v, &col) in open[0].iter().enumerate() {
                row[col] = v as u32 + 1;
            }
        }
        open.retain(|cols| !all_distinct(&row, cols));
        rows.push(row);
    }
    Ok(rows)
}

/// Outcome of the M2 check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum M2Check {
    Holds,
    /// A column set (0-based) that is rainbow in no row.
    Fails { columns: Vec<usize> },
}

impl M2Check {
    pub fn holds(&self) -> bool {
        matches!(self, M2Check::Holds)
    }
}

/// Every column set `C` with `1 ≤ |C| ≤ h` must take `|C|` distinct values
/// in some row. Sizes are checked in increasing order, each
/// lexicographically.
pub fn verify_m2(matrix: &[Vec<u32>], h: usize, budget: &Budget) -> Result<M2Check> {
    let n = matrix.first().map_or(0, Vec::len);
    let m = matrix.len() as u128;
    let top = h.min(n);
    let work: u128 = (1..=top)
        .map(|s| binomial(n as u64, s as u64).saturating_mul(m * s as u128))
        .fold(0u128, u128::saturating_add);
    budget.require("M2 verification", work)?;
    for size in 1..=top {
        let mut failing = None;
        for_each_combination(n, size, |cols| {
            if matrix.iter().any(|row| all_distinct(row, cols)) {
                true
            } else {
                failing = Some(cols.to_vec());
                false
            }
        });
        if let Some(columns) = failing {
            return Ok(M2Check::Fails { columns });
        }
    }
    Ok(M2Check::Holds)
}

/// Reported regime conditions of the matrix construction (never enforced).
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GadgetRegime {
    pub epsilon: f64,
    /// `k · log log n ≤ log n`.
    pub k_condition: bool,
    /// `log n / ((2 + ε) · log log n)`, when `log log n > 0`.
    pub h_limit: Option<f64>,
    pub h_condition: bool,
}

pub fn gadget_regime(k: usize, n: usize, h: usize, epsilon: f64) -> GadgetRegime {
    let log_n = if n > 0 { libm::log2(n as f64) } else { 0.0 };
    let loglog = if log_n > 0.0 { libm::log2(log_n) } else { f64::NEG_INFINITY };
    let k_condition = loglog.is_finite() && k as f64 * loglog <= log_n;
    let h_limit = (loglog > 0.0).then(|| log_n / ((2.0 + epsilon) * loglog));
    GadgetRegime {
        epsilon,
        k_condition,
        h_limit,
        h_condition: h_limit.is_some_and(|lim| h as f64 <= lim),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GadgetOptions {
    pub seed: u64,
    pub work_budget: u64,
    pub epsilon: f64,
}

impl Default for GadgetOptions {
    fn default() -> Self {
        GadgetOptions {
            seed: 0,
            work_budget: crate::budget::DEFAULT_WORK_BUDGET,
            epsilon: DEFAULT_EPSILON,
        }
    }
}

/// A gadget together with how it was built.
#[derive(Debug, Clone, PartialEq)]
pub struct BuiltGadget {
    pub gadget: GapGadget,
    pub requested_h: usize,
    pub recipe: MatrixRecipe,
    pub regime: GadgetRegime,
    pub warnings: Vec<String>,
}

/// Build a `(k, n, n·log h, h^k, h)` gap-gadget. A requested `h` that is not
/// a power of two is rounded down.
pub fn build_gadget(k: usize, n: usize, h: usize, opts: &GadgetOptions) -> Result<BuiltGadget> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if n == 0 {
        return Err(Error::InvalidParameter(
            "n = 0 is too small for a universal set".into(),
        ));
    }
    let (eff, t) = effective_h(h)?;
    label_count(eff, k)?;
    let budget = Budget::new(opts.work_budget);
    let built = build_matrix(n, eff, t, opts.seed, &budget)?;
    let gadget = GapGadget::new(k, n, eff, built.rows)?;
    let regime = gadget_regime(k, n, eff, opts.epsilon);
    let mut warnings = Vec::new();
    if eff != h {
        warnings.push(format!("requested h = {h} rounded down to {eff}"));
    }
    if !regime.k_condition {
        warnings.push(format!("k·log log n ≤ log n does not hold for k = {k}, n = {n}"));
    }
    if !regime.h_condition {
        warnings.push(format!(
            "h = {eff} exceeds log n / ((2+ε)·log log n) for n = {n}, ε = {}",
            opts.epsilon
        ));
    }
    if eff <= k {
        warnings.push(format!("h = {eff} ≤ k = {k}: soundness only separates opt > k"));
    }
    if gadget.m != n * t {
        warnings.push(format!("m = {} exceeds n·log h = {}", gadget.m, n * t));
    }
    Ok(BuiltGadget {
        gadget,
        requested_h: h,
        recipe: built.recipe,
        regime,
        warnings,
    })
}

/// Outcome of the G3 check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum G3Check {
    Holds,
    M1(M1Violation),
    /// No vertex of `group` is adjacent to all of `b` (one index per part).
    Fails { b: Vec<usize>, group: usize },
}

impl G3Check {
    pub fn holds(&self) -> bool {
        matches!(self, G3Check::Holds)
    }
}

/// For every `b₁ ∈ B₁, …, b_k ∈ B_k` and every group, search the group's
/// vertices for one adjacent to all `b_j`.
pub fn verify_g3(g: &GapGadget, budget: &Budget) -> Result<G3Check> {
    if let Some(v) = g.check_m1() {
        return Ok(G3Check::M1(v));
    }
    let tuples = checked_pow(g.n as u128, g.k as u64).unwrap_or(u128::MAX);
    budget.require(
        "G3 verification",
        tuples.saturating_mul((g.m * g.ell) as u128),
    )?;
    let labels = g.label_table();
    let mut result = G3Check::Holds;
    for_each_tuple(g.n, g.k, |b| {
        for group in 0..g.m {
            let row = &g.matrix[group];
            let found = labels
                .iter()
                .any(|a| b.iter().enumerate().all(|(j, &c)| row[c] == a[j]));
            if !found {
                result = G3Check::Fails {
                    b: b.to_vec(),
                    group,
                };
                return false;
            }
        }
        true
    });
    Ok(result)
}

/// Outcome of the G4 check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum G4Check {
    Holds,
    M1(M1Violation),
    /// `|x| ≤ h`, yet every `witnesses[i]` has at least `k + 1` neighbours
    /// in `x`.
    Fails {
        x: Vec<BVertex>,
        witnesses: Vec<AVertex>,
    },
}

impl G4Check {
    pub fn holds(&self) -> bool {
        matches!(self, G4Check::Holds)
    }
}

/// For every `X ⊆ B` with `|X| ≤ h`, look for one vertex per group with at
/// least `k + 1` neighbours in `X`; finding one in every group refutes G4.
pub fn verify_g4(g: &GapGadget, budget: &Budget) -> Result<G4Check> {
    if let Some(v) = g.check_m1() {
        return Ok(G4Check::M1(v));
    }
    let total = g.k * g.n;
    let top = g.h.min(total);
    let per_x = (g.m * g.ell) as u128;
    let work: u128 = (0..=top)
        .map(|s| binomial(total as u64, s as u64).saturating_mul(per_x))
        .fold(0u128, u128::saturating_add);
    budget.require("G4 verification", work)?;
    let labels = g.label_table();
    let mut result = G4Check::Holds;
    for size in 0..=top {
        let done = for_each_combination(total, size, |xs| {
            let mut witnesses = Vec::with_capacity(g.m);
            for group in 0..g.m {
                let row = &g.matrix[group];
                let heavy = labels.iter().position(|a| {
                    xs.iter()
                        .filter(|&&v| row[v % g.n] == a[v / g.n])
                        .count()
                        > g.k
                });
                match heavy {
                    Some(a) => witnesses.push(g.avertex(group, a)),
                    None => return true,
                }
            }
            result = G4Check::Fails {
                x: xs
                    .iter()
                    .map(|&v| BVertex {
                        part: v / g.n,
                        index: v % g.n,
                    })
                    .collect(),
                witnesses,
            };
            false
        });
        if !done {
            break;
        }
    }
    Ok(result)
}

/// Whether `k·(1 + ℓ·ln|U| + ln m) < h`: the regime in which running the
/// greedy `(1 + ln|U'|)`-approximation on the reduced instance would decide
/// the source instance.
pub fn check_greedy_infeasibility(k: usize, ell: usize, universe_size: usize, m: usize, h: usize) -> bool {
    let ln = |x: usize| libm::log(x as f64);
    (k as f64) * (1.0 + ell as f64 * ln(universe_size) + ln(m)) < h as f64
}
