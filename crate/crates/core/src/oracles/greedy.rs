use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::SetCoverInstance;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyCover {
    /// Sets in the order they were picked.
    pub cover: Vec<usize>,
    pub size: usize,
}

/// Repeatedly take the set covering the most uncovered elements; ties go to
/// the lowest set index.
pub fn greedy_cover(inst: &SetCoverInstance) -> Result<GreedyCover> {
    let all: Vec<usize> = (0..inst.num_sets()).collect();
    if let Some(u) = inst.first_uncovered(&all) {
        return Err(Error::Uncoverable {
            id: inst.universe_ids[u].clone(),
        });
    }
    let masks = inst.set_masks();
    let mut covered = crate::bits::BitSet::new(inst.universe_size());
    let mut cover = Vec::new();
    while !covered.is_full() {
        let mut best = (0, 0);
        for (s, m) in masks.iter().enumerate() {
            let gain = m.count_minus(&covered);
            if gain > best.1 {
                best = (s, gain);
            }
        }
        covered.union_with(&masks[best.0]);
        cover.push(best.0);
    }
    let size = cover.len();
    Ok(GreedyCover { cover, size })
}
