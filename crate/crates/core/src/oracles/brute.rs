use alloc::vec;
use alloc::vec::Vec;

use crate::bits::{for_each_combination, for_each_tuple};
use crate::budget::{binomial, checked_pow, Budget};
use crate::error::Result;
use crate::model::{CnfFormula, MultipartiteGraph, VectorSumInstance};

/// A satisfying assignment, if any; assignments are tried in lexicographic
/// order with variable 1 most significant.
pub fn brute_sat(phi: &CnfFormula, budget: &Budget) -> Result<Option<Vec<bool>>> {
    let n = phi.num_vars;
    let total = checked_pow(2, n as u64).unwrap_or(u128::MAX);
    budget.require("brute-force SAT", total.saturating_mul(phi.clauses.len().max(1) as u128))?;
    let mut found = None;
    for_each_tuple(2, n, |t| {
        let assignment: Vec<bool> = t.iter().map(|&b| b == 1).collect();
        if phi.satisfied_by(&assignment) {
            found = Some(assignment);
            false
        } else {
            true
        }
    });
    Ok(found)
}

/// `k` pairwise adjacent vertices, ascending, if any.
pub fn brute_clique(g: &MultipartiteGraph, k: usize, budget: &Budget) -> Result<Option<Vec<usize>>> {
    let n = g.num_vertices;
    budget.require(
        "brute-force clique",
        binomial(n as u64, k as u64).saturating_mul((k * k) as u128),
    )?;
    let mut adj = vec![false; n * n];
    for &(a, b) in &g.edges {
        adj[a * n + b] = true;
        adj[b * n + a] = true;
    }
    let mut found = None;
    for_each_combination(n, k, |c| {
        let clique = c
            .iter()
            .enumerate()
            .all(|(x, &a)| c[..x].iter().all(|&b| adj[a * n + b]));
        if clique {
            found = Some(c.to_vec());
        }
        !clique
    });
    Ok(found)
}

/// One index per list whose vectors sum to zero, if any.
pub fn brute_vectorsum(vs: &VectorSumInstance, budget: &Budget) -> Result<Option<Vec<usize>>> {
    let product = vs
        .lists
        .iter()
        .try_fold(1u128, |acc, l| acc.checked_mul(l.len() as u128))
        .unwrap_or(u128::MAX);
    budget.require("brute-force vector sum", product.saturating_mul(vs.dim.max(1) as u128))?;
    Ok(first_selection(
        &vs.lists.iter().map(Vec::len).collect::<Vec<_>>(),
        |picks| {
            (0..vs.dim).all(|j| {
                picks
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| vs.lists[i][x][j])
                    .sum::<i64>()
                    == 0
            })
        },
    ))
}

/// One index per list whose integers sum to zero, if any.
pub fn brute_ksum(lists: &[Vec<i64>], budget: &Budget) -> Result<Option<Vec<usize>>> {
    let product = lists
        .iter()
        .try_fold(1u128, |acc, l| acc.checked_mul(l.len() as u128))
        .unwrap_or(u128::MAX);
    budget.require("brute-force k-SUM", product)?;
    Ok(first_selection(
        &lists.iter().map(Vec::len).collect::<Vec<_>>(),
        |picks| {
            picks
                .iter()
                .enumerate()
                .map(|(i, &x)| lists[i][x] as i128)
                .sum::<i128>()
                == 0
        },
    ))
}

/// First selection (lexicographic) with one index below `sizes[i]` per
/// position that satisfies `accept`.
fn first_selection(sizes: &[usize], mut accept: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    if sizes.contains(&0) {
        return None;
    }
    let mut picks = vec![0usize; sizes.len()];
    loop {
        if accept(&picks) {
            return Some(picks);
        }
        let mut i = sizes.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            picks[i] += 1;
            if picks[i] < sizes[i] {
                break;
            }
            picks[i] = 0;
        }
    }
}
