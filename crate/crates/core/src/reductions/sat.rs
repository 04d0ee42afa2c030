//! CNF satisfiability to set cover with one part per variable block.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{CnfFormula, SetCoverInstance};

/// Variables of part `p` (0-based) when `num_vars` variables are cut into
/// `k` contiguous blocks of `⌈num_vars / k⌉`.
pub fn variable_block(num_vars: usize, k: usize, p: usize) -> core::ops::Range<usize> {
    let chunk = num_vars.div_ceil(k);
    let start = (p * chunk).min(num_vars);
    start..((p + 1) * chunk).min(num_vars)
}

fn bits_label(bits: &[bool]) -> String {
    if bits.is_empty() {
        return "-".into();
    }
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Set id of the partial assignment `bits` to the variables of part `p`.
pub fn assignment_id(p: usize, bits: &[bool]) -> String {
    format!("asg:{p}:{}", bits_label(bits))
}

/// Part `p` holds every assignment to its block of variables, in
/// lexicographic order of the bit string (first variable most
/// significant). The universe is `clause:1..=C` followed by `guard:1..=k`;
/// an assignment of part `p` covers `guard:p+1` and every clause one of
/// its literals satisfies.
pub fn sat_to_setcover(phi: &CnfFormula, k: usize, size_budget: u64) -> Result<SetCoverInstance> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    phi.validate()?;
    let chunk = phi.num_vars.div_ceil(k);
    let per_part = 1u128
        .checked_shl(chunk as u32)
        .filter(|_| chunk < 100)
        .unwrap_or(u128::MAX);
    let total = per_part.saturating_mul(k as u128);
    if total > size_budget as u128 {
        return Err(Error::SizeExceeded {
            what: "assignment sets k·2^⌈n/k⌉",
            size: format!("{k}·2^{chunk} = {total}"),
            budget: size_budget,
        });
    }
    let c = phi.clauses.len();
    let mut universe_ids: Vec<String> = (1..=c).map(|j| format!("clause:{j}")).collect();
    universe_ids.extend((1..=k).map(|i| format!("guard:{i}")));
    let mut set_ids = Vec::new();
    let mut incidence = Vec::new();
    let mut sizes = Vec::with_capacity(k);
    let mut full = alloc::vec![false; phi.num_vars];
    for p in 0..k {
        let block = variable_block(phi.num_vars, k, p);
        let w = block.len();
        for a in 0..1usize << w {
            let bits: Vec<bool> = (0..w).map(|j| a >> (w - 1 - j) & 1 == 1).collect();
            for (j, v) in block.clone().enumerate() {
                full[v] = bits[j];
            }
            let mut row: Vec<usize> = phi
                .clauses
                .iter()
                .enumerate()
                .filter(|(_, clause)| {
                    clause.iter().any(|&l| {
                        block.contains(&(l.unsigned_abs() as usize - 1))
                            && CnfFormula::literal_true(l, &full)
                    })
                })
                .map(|(j, _)| j)
                .collect();
            row.push(c + p);
            set_ids.push(assignment_id(p, &bits));
            incidence.push(row);
        }
        sizes.push(1 << w);
    }
    Ok(SetCoverInstance::new(set_ids, universe_ids, incidence).with_part_sizes(&sizes))
}

/// The rainbow cover induced by a satisfying assignment.
pub fn sat_cover_ids(phi: &CnfFormula, k: usize, assignment: &[bool]) -> Vec<String> {
    (0..k)
        .map(|p| assignment_id(p, &assignment[variable_block(phi.num_vars, k, p)]))
        .collect()
}
