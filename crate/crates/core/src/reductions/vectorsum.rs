//! Rainbow zero-sum vectors to set cover.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::bits::for_each_tuple;
use crate::budget::checked_pow;
use crate::error::{Error, Result};
use crate::model::{SetCoverInstance, VectorSumInstance};

/// Zero-sum tuples in `[-bound, bound]^k`, lexicographic.
pub fn zero_sum_tuples(k: usize, bound: i64) -> Vec<Vec<i64>> {
    let width = (2 * bound + 1) as usize;
    let mut out = Vec::new();
    for_each_tuple(width, k, |t| {
        if t.iter().map(|&x| x as i64 - bound).sum::<i64>() == 0 {
            out.push(t.iter().map(|&x| x as i64 - bound).collect());
        }
        true
    });
    out
}

pub fn vector_id(list: usize, index: usize) -> String {
    format!("vec:{list}:{index}")
}

/// `U = ⋃_j U_j` with `U_j = [k]^{|D|}` for every coordinate `j`, ids
/// `vs:j:u1.u2...` (1-based). Vector `x` of list `i` covers `u ∈ U_j` iff
/// `u[l] = i` and `x[j] = D[l][i]` for some `l`.
pub fn vectorsum_to_setcover(vs: &VectorSumInstance, size_budget: u64) -> Result<SetCoverInstance> {
    vs.validate()?;
    let k = vs.k;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let bound = vs.bound;
    let span = 2 * bound as u128 + 1;
    if checked_pow(span, k as u64).is_none_or(|c| c > size_budget as u128) {
        return Err(Error::SizeExceeded {
            what: "candidate tuples (2·bound+1)^k",
            size: format!("{span}^{k}"),
            budget: size_budget,
        });
    }
    let d = zero_sum_tuples(k, bound);
    let per = checked_pow(k as u128, d.len() as u64);
    let total = per.and_then(|p| p.checked_mul(vs.dim as u128));
    match total {
        Some(t) if t <= size_budget as u128 => {}
        _ => {
            return Err(Error::SizeExceeded {
                what: "universe dim·k^|D|",
                size: format!("{}·{k}^{}", vs.dim, d.len()),
                budget: size_budget,
            })
        }
    }
    let per = per.unwrap_or(0) as usize;
    let sets: Vec<(usize, usize)> = vs
        .lists
        .iter()
        .enumerate()
        .flat_map(|(i, l)| (0..l.len()).map(move |x| (i, x)))
        .collect();
    let mut universe_ids = Vec::with_capacity(per * vs.dim);
    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); sets.len()];
    let width = (2 * bound + 1) as usize;
    let mut allowed = vec![false; k * width];
    for j in 0..vs.dim {
        for_each_tuple(k, d.len(), |u| {
            let e = universe_ids.len();
            let mut id = format!("vs:{}:", j + 1);
            for (l, &i) in u.iter().enumerate() {
                if l > 0 {
                    id.push('.');
                }
                id.push_str(&format!("{}", i + 1));
            }
            universe_ids.push(id);
            allowed.iter_mut().for_each(|a| *a = false);
            for (l, &i) in u.iter().enumerate() {
                allowed[i * width + (d[l][i] + bound) as usize] = true;
            }
            for (s, &(i, x)) in sets.iter().enumerate() {
                if allowed[i * width + (vs.lists[i][x][j] + bound) as usize] {
                    incidence[s].push(e);
                }
            }
            true
        });
    }
    let set_ids = sets.iter().map(|&(i, x)| vector_id(i, x)).collect();
    let sizes: Vec<usize> = vs.lists.iter().map(Vec::len).collect();
    Ok(SetCoverInstance::new(set_ids, universe_ids, incidence).with_part_sizes(&sizes))
}

/// The cover induced by choosing `picks[i]` from list `i`.
pub fn vectorsum_cover_ids(picks: &[usize]) -> Vec<String> {
    picks.iter().enumerate().map(|(i, &x)| vector_id(i, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs_with_unit_bound() {
        assert_eq!(
            zero_sum_tuples(2, 1),
            vec![vec![-1, 1], vec![0, 0], vec![1, -1]]
        );
    }

    #[test]
    fn planted_pair_covers() {
        let vs = VectorSumInstance {
            k: 2,
            dim: 2,
            bound: 1,
            lists: vec![vec![vec![1, 0], vec![1, 1]], vec![vec![0, 0], vec![-1, 0]]],
        };
        let inst = vectorsum_to_setcover(&vs, 1000).unwrap();
        assert_eq!(inst.universe_size(), 2 * 8);
        assert!(inst.validate().is_ok());
        let ids = vectorsum_cover_ids(&[0, 1]);
        let idx: Vec<usize> = ids.iter().map(|id| inst.set_index(id).unwrap()).collect();
        assert!(inst.covers(&idx));
        assert!(!inst.covers(&[0, 2]));
    }
}
