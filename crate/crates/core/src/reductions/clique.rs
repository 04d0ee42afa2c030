//! Multipartite clique to set cover over part pairs.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{MultipartiteGraph, SetCoverInstance};

/// Number of bits in a vertex encoding: `max(1, ⌈log₂ n⌉)`.
pub fn encoding_bits(num_vertices: usize) -> usize {
    let n = num_vertices.max(2);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

/// Bit `l` (0-based, most significant first) of `(v + 1) mod 2^L`.
pub fn encode_bit(v: usize, bits: usize, l: usize) -> usize {
    let code = (v + 1) & ((1usize << bits) - 1);
    code >> (bits - 1 - l) & 1
}

/// `σ_i(j)` for 0-based parts: the rank of `j` in `[k] \ {i}`, 1-based.
pub fn sigma(i: usize, j: usize) -> usize {
    if j < i {
        j + 1
    } else {
        j
    }
}

pub fn edge_id(u: usize, v: usize) -> String {
    format!("edge:{u}:{v}")
}

/// Part pairs `(i, j)`, `i < j`, in lexicographic order.
pub fn part_pairs(k: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            pairs.push((i, j));
        }
    }
    pairs
}

/// Sets are the edges of `g`, grouped by part pair and sorted within a
/// pair; `edge:u:v` has `u` in the lower part. The universe is
/// `[k] × [k−1]^{0,1} × [L]`, listed as `cl:i:f0/f1:l` (all 1-based).
/// An edge `{u, v}` with `u ∈ V_i`, `v ∈ V_j` covers `(i, f, l)` when
/// `f(encode(u)[l]) = σ_i(j)`, and symmetrically for `v`.
pub fn clique_to_setcover(g: &MultipartiteGraph, k: usize) -> Result<SetCoverInstance> {
    if k < 2 {
        return Err(Error::InvalidParameter("k must be at least 2".into()));
    }
    if g.k() != k {
        return Err(Error::DimensionMismatch(format!(
            "graph has {} parts, expected {k}",
            g.k()
        )));
    }
    g.validate()?;
    let bits = encoding_bits(g.num_vertices);
    let owner = g.part_map();
    let pairs = part_pairs(k);
    let mut grouped: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); pairs.len()];
    for &(a, b) in &g.edges {
        let (pa, pb) = (owner[a].expect("validated"), owner[b].expect("validated"));
        let (u, v, i, j) = if pa < pb { (a, b, pa, pb) } else { (b, a, pb, pa) };
        let idx = pairs.iter().position(|&p| p == (i, j)).expect("pair of distinct parts");
        grouped[idx].push((u, v));
    }
    let index = |i: usize, f0: usize, f1: usize, l: usize| ((i * (k - 1) + f0) * (k - 1) + f1) * bits + l;
    let mut universe_ids = Vec::with_capacity(k * (k - 1) * (k - 1) * bits);
    for i in 0..k {
        for f0 in 0..k - 1 {
            for f1 in 0..k - 1 {
                for l in 0..bits {
                    universe_ids.push(format!("cl:{}:{}/{}:{}", i + 1, f0 + 1, f1 + 1, l + 1));
                }
            }
        }
    }
    let mut set_ids = Vec::new();
    let mut incidence = Vec::new();
    let mut sizes = Vec::with_capacity(pairs.len());
    for (p, list) in grouped.iter_mut().enumerate() {
        list.sort_unstable();
        let (i, j) = pairs[p];
        for &(u, v) in list.iter() {
            let mut row = Vec::new();
            for (x, side, other) in [(u, i, j), (v, j, i)] {
                let want = sigma(side, other) - 1;
                for l in 0..bits {
                    let bit = encode_bit(x, bits, l);
                    for free in 0..k - 1 {
                        let (f0, f1) = if bit == 0 { (want, free) } else { (free, want) };
                        row.push(index(side, f0, f1, l));
                    }
                }
            }
            row.sort_unstable();
            set_ids.push(edge_id(u, v));
            incidence.push(row);
        }
        sizes.push(list.len());
    }
    Ok(SetCoverInstance::new(set_ids, universe_ids, incidence).with_part_sizes(&sizes))
}

/// The one-edge-per-pair cover induced by a clique given as one vertex per
/// part (in part order).
pub fn clique_cover_ids(vertices: &[usize]) -> Vec<String> {
    part_pairs(vertices.len())
        .into_iter()
        .map(|(i, j)| edge_id(vertices[i], vertices[j]))
        .collect()
}
