use alloc::string::String;
use alloc::vec::Vec;

use crate::bits::{for_each_combination, BitSet};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::hypercube::HypercubeView;
use crate::model::SetCoverInstance;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactResult {
    /// Minimum cover size and the lexicographically least minimum cover.
    Found { size: usize, witness: Vec<usize> },
    /// No cover of size at most the bound.
    ExceedsBound,
    /// Some element is covered by no set.
    Infeasible { element: String },
}

impl ExactResult {
    pub fn size(&self) -> Option<usize> {
        match self {
            ExactResult::Found { size, .. } => Some(*size),
            _ => None,
        }
    }
}

/// Anything that can say whether a choice of sets covers its universe.
pub trait CoverageModel {
    fn num_sets(&self) -> usize;
    fn covers(&self, chosen: &[usize]) -> bool;
    /// An element no set covers, if any.
    fn uncoverable(&self) -> Option<String>;
}

impl CoverageModel for SetCoverInstance {
    fn num_sets(&self) -> usize {
        SetCoverInstance::num_sets(self)
    }

    fn covers(&self, chosen: &[usize]) -> bool {
        SetCoverInstance::covers(self, chosen)
    }

    fn uncoverable(&self) -> Option<String> {
        let all: Vec<usize> = (0..self.num_sets()).collect();
        self.first_uncovered(&all).map(|u| self.universe_ids[u].clone())
    }
}

impl CoverageModel for HypercubeView<'_> {
    fn num_sets(&self) -> usize {
        HypercubeView::num_sets(self)
    }

    fn covers(&self, chosen: &[usize]) -> bool {
        HypercubeView::covers(self, chosen)
    }

    fn uncoverable(&self) -> Option<String> {
        let all: Vec<usize> = (0..self.num_sets()).collect();
        self.uncovered(&all).map(|(g, f)| self.element_id(g, &f))
    }
}

/// Plain enumeration of subsets by size, each size in lexicographic order.
/// Every subset examined is charged to the budget.
pub fn exact_opt_model<M: CoverageModel + ?Sized>(model: &M, bound: usize, budget: &Budget) -> Result<ExactResult> {
    if let Some(element) = model.uncoverable() {
        return Ok(ExactResult::Infeasible { element });
    }
    let n = model.num_sets();
    for size in 0..=bound.min(n) {
        let mut found = None;
        let mut err = None;
        for_each_combination(n, size, |c| {
            if let Err(e) = budget.charge("exhaustive set cover search", 1) {
                err = Some(e);
                return false;
            }
            if model.covers(c) {
                found = Some(c.to_vec());
                return false;
            }
            true
        });
        if let Some(e) = err {
            return Err(e);
        }
        if let Some(witness) = found {
            return Ok(ExactResult::Found { size, witness });
        }
    }
    Ok(ExactResult::ExceedsBound)
}

/// [`exact_opt_model`] on an explicit instance; the reference for
/// [`exact_opt`].
pub fn exhaustive_opt(inst: &SetCoverInstance, bound: usize, budget: &Budget) -> Result<ExactResult> {
    exact_opt_model(inst, bound, budget)
}

struct Search<'a> {
    masks: &'a [BitSet],
    last: &'a [usize],
    budget: &'a Budget,
    chosen: Vec<usize>,
}

impl Search<'_> {
    /// Extend `chosen` by `left` sets of index at least `start`.
    fn dfs(&mut self, start: usize, left: usize, covered: &BitSet) -> Result<bool> {
        self.budget.charge("exact set cover search", 1)?;
        if left == 0 {
            return Ok(covered.is_full());
        }
        let n = self.masks.len();
        let mut missing = 0;
        for u in 0..covered.len() {
            if !covered.contains(u) {
                if self.last[u] < start {
                    return Ok(false);
                }
                missing += 1;
            }
        }
        if missing == 0 {
            // a smaller cover exists; the caller searches sizes in order
            return Ok(false);
        }
        let best_gain = (start..n).map(|s| self.masks[s].count_minus(covered)).max().unwrap_or(0);
        if best_gain * left < missing {
            return Ok(false);
        }
        for s in start..=n - left {
            if self.masks[s].count_minus(covered) == 0 {
                continue;
            }
            let mut next = covered.clone();
            next.union_with(&self.masks[s]);
            self.chosen.push(s);
            if self.dfs(s + 1, left - 1, &next)? {
                return Ok(true);
            }
            self.chosen.pop();
        }
        Ok(false)
    }
}

/// Minimum cover of size at most `bound` by iterative deepening over the
/// cover size. Branches are cut when an uncovered element has no remaining
/// set or when the remaining sets cannot cover what is missing; the first
/// cover met is the lexicographically least one of minimum size.
pub fn exact_opt(inst: &SetCoverInstance, bound: usize, budget: &Budget) -> Result<ExactResult> {
    if let Some(v) = inst.validate().violations.iter().find(|v| {
        !matches!(v, crate::model::Violation::UnequalPartWidths { .. })
    }) {
        return Err(Error::InvalidInstance(alloc::format!("{v}")));
    }
    let masks = inst.set_masks();
    let mut last = alloc::vec![usize::MAX; inst.universe_size()];
    for (s, row) in inst.incidence.iter().enumerate() {
        for &u in row {
            last[u] = s;
        }
    }
    if let Some(u) = last.iter().position(|&l| l == usize::MAX) {
        return Ok(ExactResult::Infeasible {
            element: inst.universe_ids[u].clone(),
        });
    }
    let empty = BitSet::new(inst.universe_size());
    if empty.is_full() {
        return Ok(ExactResult::Found {
            size: 0,
            witness: Vec::new(),
        });
    }
    let mut search = Search {
        masks: &masks,
        last: &last,
        budget,
        chosen: Vec::new(),
    };
    for size in 1..=bound.min(inst.num_sets()) {
        search.chosen.clear();
        if search.dfs(0, size, &empty)? {
            return Ok(ExactResult::Found {
                size,
                witness: search.chosen.clone(),
            });
        }
    }
    Ok(ExactResult::ExceedsBound)
}
