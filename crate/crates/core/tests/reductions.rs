use gapcover_core::model::{CnfFormula, MultipartiteGraph, VectorSumInstance};
use gapcover_core::oracles::{brute_clique, brute_ksum, brute_sat, brute_vectorsum, exact_opt, ExactResult};
use gapcover_core::reductions::clique::clique_cover_ids;
use gapcover_core::reductions::ksum::entry_range;
use gapcover_core::reductions::{
    clique_to_setcover, ksum_to_vectorsum, sat_to_setcover, vectorsum_to_setcover, DigitParams,
};
use gapcover_core::Budget;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn at_most(inst: &gapcover_core::SetCoverInstance, k: usize) -> Option<Vec<usize>> {
    match exact_opt(inst, k, &Budget::default()).unwrap() {
        ExactResult::Found { witness, .. } => Some(witness),
        _ => None,
    }
}

#[test]
fn contradiction_needs_two_sets() {
    let phi = CnfFormula::new(1, vec![vec![1], vec![-1]]).unwrap();
    let inst = sat_to_setcover(&phi, 1, 1000).unwrap();
    assert_eq!(at_most(&inst, 1), None);
}

#[test]
fn sat_agrees_with_brute_force_on_three_variables() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let clauses: Vec<Vec<i64>> = (0..rng.random_range(1..=5))
            .map(|_| {
                (0..rng.random_range(1..=2))
                    .map(|_| {
                        let v = rng.random_range(1..=3i64);
                        if rng.random_bool(0.5) { v } else { -v }
                    })
                    .collect()
            })
            .collect();
        let phi = CnfFormula::new(3, clauses).unwrap();
        let sat = brute_sat(&phi, &Budget::default()).unwrap().is_some();
        for k in 1..=3 {
            let inst = sat_to_setcover(&phi, k, 1000).unwrap();
            let cover = at_most(&inst, k);
            assert_eq!(sat, cover.is_some(), "{phi:?} k={k}");
            if let Some(c) = cover {
                assert!(inst.is_rainbow(&c));
            }
        }
    }
}

fn random_tripartite(rng: &mut ChaCha8Rng) -> MultipartiteGraph {
    let n = rng.random_range(3..=7);
    let mut parts = vec![vec![0], vec![1], vec![2]];
    for v in 3..n {
        parts[rng.random_range(0..3)].push(v);
    }
    let owner: Vec<usize> = (0..n)
        .map(|v| parts.iter().position(|p| p.contains(&v)).unwrap())
        .collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if owner[a] != owner[b] && rng.random_bool(0.45) {
                edges.push((a, b));
            }
        }
    }
    MultipartiteGraph::new(n, parts, edges).unwrap()
}

#[test]
fn clique_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..60 {
        let g = random_tripartite(&mut rng);
        let inst = clique_to_setcover(&g, 3).unwrap();
        let clique = brute_clique(&g, 3, &Budget::default()).unwrap();
        assert_eq!(clique.is_some(), at_most(&inst, 3).is_some(), "{g:?}");
        if let Some(mut vs) = clique {
            let owner = g.part_map();
            vs.sort_by_key(|&v| owner[v]);
            let idx: Vec<usize> = clique_cover_ids(&vs)
                .iter()
                .map(|id| inst.set_index(id).unwrap())
                .collect();
            assert!(inst.covers(&idx) && inst.is_rainbow(&idx));
        }
    }
}

#[test]
fn vectorsum_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..150 {
        let dim = rng.random_range(1..=3);
        let lists: Vec<Vec<Vec<i64>>> = (0..2)
            .map(|_| {
                (0..rng.random_range(1..=4))
                    .map(|_| (0..dim).map(|_| rng.random_range(-1..=1)).collect())
                    .collect()
            })
            .collect();
        let vs = VectorSumInstance { k: 2, dim, bound: 1, lists };
        let inst = vectorsum_to_setcover(&vs, 1_000_000).unwrap();
        let yes = brute_vectorsum(&vs, &Budget::default()).unwrap().is_some();
        assert_eq!(yes, at_most(&inst, 2).is_some(), "{vs:?}");
    }
}

#[test]
fn digit_mappings_preserve_zero_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..150 {
        let k = rng.random_range(2..=3);
        let lists: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..rng.random_range(1..=3)).map(|_| rng.random_range(-8..=8)).collect())
            .collect();
        let p = rng.random_range(k as u64 + 1..=k as u64 + 3);
        let params = DigitParams::choose(k, 8, Some(p), None).unwrap();
        let family = ksum_to_vectorsum(&lists, &params, 1_000_000).unwrap();
        assert_eq!(family.len() as u128, params.count().unwrap());
        let (lo, hi) = entry_range(&params);
        assert!(family.iter().flat_map(|vs| vs.lists.iter().flatten().flatten()).all(|&x| lo <= x && x <= hi));
        let left = brute_ksum(&lists, &Budget::default()).unwrap().is_some();
        let right = family
            .iter()
            .any(|vs| brute_vectorsum(vs, &Budget::default()).unwrap().is_some());
        assert_eq!(left, right, "{lists:?} p={p}");
    }
}
