use gapcover::formats::*;
use gapcover_core::reductions::{pipeline_sat, PipelineOptions, PipelineParams};
use gapcover_core::{CnfFormula, GapGadget, MultipartiteGraph, SetCoverInstance, UniversalSet, VectorSumInstance};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_instance(rng: &mut ChaCha8Rng, sets: usize, universe: usize, parts: usize) -> SetCoverInstance {
    let set_ids = (0..sets).map(|i| format!("s {i},\"x\"")).collect();
    let universe_ids = (0..universe).map(|i| format!("u{i}")).collect();
    let incidence = (0..sets)
        .map(|_| (0..universe).filter(|_| rng.random_bool(0.3)).collect())
        .collect();
    let inst = SetCoverInstance::new(set_ids, universe_ids, incidence);
    match sets.checked_div(parts) {
        Some(width) => inst.with_part_sizes(&vec![width; parts]),
        None => inst,
    }
}

#[test]
fn hundred_set_instance_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let inst = random_instance(&mut rng, 100, 40, 4);
    let back = read_instance(&write_instance(&inst)).unwrap();
    assert_eq!(back, inst);
    assert_eq!(write_instance(&back), write_instance(&inst));
}

#[test]
fn truncated_files_are_errors() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let text = write_instance(&random_instance(&mut rng, 10, 5, 0));
    assert!(matches!(read_instance(&text[..text.len() / 2]), Err(FormatError::Json(_))));

    let g = GapGadget::new(1, 2, 2, vec![vec![1, 2]]).unwrap();
    let text = write_gadget(&g);
    let cut = text.trim_end().rsplit_once('\n').unwrap().0;
    assert!(read_gadget(cut).is_err());
}

#[test]
fn cnf_errors_name_the_line() {
    let err = read_cnf("c hi\np cnf 2 1\n1 x 0\n").unwrap_err();
    assert!(matches!(err, FormatError::Parse { line: 3, .. }), "{err}");
    assert!(read_cnf("p cnf 2 1\n3 0\n").is_err());
}

#[test]
fn instance_with_unknown_element_is_rejected() {
    let text = r#"{"sets":["a"],"universe":["x"],"incidence":[["y"]],"partition":null}"#;
    assert!(read_instance(text).is_err());
}

#[test]
fn pipeline_params_round_trip_through_json() {
    let phi = CnfFormula::new(2, vec![vec![1, 2], vec![-1]]).unwrap();
    let p = pipeline_sat(&phi, 2, &PipelineOptions::default()).unwrap().params;
    let text = serde_json::to_string(&p).unwrap();
    let back: PipelineParams = serde_json::from_str(&text).unwrap();
    assert_eq!(back, p);
}

proptest! {
    #[test]
    fn instances_round_trip(seed in any::<u64>(), sets in 1usize..20, universe in 0usize..12, parts in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let parts = if parts > 0 && sets % parts == 0 { parts } else { 0 };
        let inst = random_instance(&mut rng, sets, universe, parts);
        prop_assert_eq!(read_instance(&write_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn gadgets_round_trip(k in 1usize..3, n in 1usize..5, t in 1u32..3, seed in any::<u64>()) {
        let h = 1usize << t;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = rng.random_range(1..4);
        let matrix = (0..m)
            .map(|_| (0..n).map(|_| rng.random_range(1..=h as u32)).collect())
            .collect();
        let g = GapGadget::new(k, n, h, matrix).unwrap();
        prop_assert_eq!(read_gadget(&write_gadget(&g)).unwrap(), g);
    }

    #[test]
    fn cnfs_round_trip(vars in 1usize..6, clauses in prop::collection::vec(prop::collection::vec((1i64..6, any::<bool>()), 1..4), 0..6)) {
        let clauses: Vec<Vec<i64>> = clauses
            .into_iter()
            .map(|c| c.into_iter().map(|(v, s)| { let v = 1 + (v - 1) % vars as i64; if s { v } else { -v } }).collect())
            .collect();
        let phi = CnfFormula::new(vars, clauses).unwrap();
        prop_assert_eq!(read_cnf(&write_cnf(&phi)).unwrap(), phi);
    }

    #[test]
    fn graphs_round_trip(seed in any::<u64>(), n in 2usize..9, k in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = n.max(k);
        let mut parts = vec![Vec::new(); k];
        let owner: Vec<usize> = (0..n).map(|v| { let p = if v < k { v } else { rng.random_range(0..k) }; parts[p].push(v); p }).collect();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if owner[a] != owner[b] && rng.random_bool(0.5) {
                    edges.push((a, b));
                }
            }
        }
        let g = MultipartiteGraph::new(n, parts, edges).unwrap();
        prop_assert_eq!(read_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn vectorsums_round_trip(seed in any::<u64>(), k in 1usize..4, dim in 1usize..4, bound in 0i64..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lists = (0..k)
            .map(|_| (0..rng.random_range(0..4)).map(|_| (0..dim).map(|_| rng.random_range(-bound..=bound)).collect()).collect())
            .collect();
        let vs = VectorSumInstance { k, dim, bound, lists };
        prop_assert_eq!(read_vectorsum(&write_vectorsum(&vs)).unwrap(), vs);
    }

    #[test]
    fn lists_round_trip(lists in prop::collection::vec(prop::collection::vec(-1000i64..1000, 1..6), 1..5)) {
        prop_assert_eq!(read_lists(&write_lists(&lists)).unwrap(), lists);
    }

    #[test]
    fn universal_sets_round_trip(n in 1usize..12, rows in prop::collection::btree_set(any::<u16>(), 0..8)) {
        let rows: std::collections::BTreeSet<String> = rows.iter().map(|r| (0..n).map(|i| if r >> i & 1 == 1 { '1' } else { '0' }).collect()).collect();
        let refs: Vec<&str> = rows.iter().map(String::as_str).collect();
        let us = UniversalSet::from_bitstrings(n, 1.min(n), &refs).unwrap();
        prop_assert_eq!(read_universal(&write_universal(&us)).unwrap(), us);
    }
}
