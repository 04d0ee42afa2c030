use gapcover_core::gadget::{
    build_gadget, verify_g3, verify_g4, verify_m2, G4Check, GadgetOptions, GapGadget,
};
use gapcover_core::Budget;
use proptest::prelude::*;

#[test]
fn desk_scale_gadgets_satisfy_every_condition() {
    for (k, h, n) in [(1, 2, 8), (2, 2, 8), (2, 2, 16), (1, 4, 16), (3, 2, 8)] {
        let built = build_gadget(k, n, h, &GadgetOptions::default()).unwrap();
        let g = &built.gadget;
        assert_eq!(g.ell, h.pow(k as u32));
        assert!(verify_m2(&g.matrix, g.h, &Budget::default()).unwrap().holds());
        assert!(verify_g3(g, &Budget::default()).unwrap().holds(), "G3 ({k},{h},{n})");
        assert!(verify_g4(g, &Budget::default()).unwrap().holds(), "G4 ({k},{h},{n})");
    }
}

#[test]
fn g4_counterexample_is_genuine() {
    let g = GapGadget::new(1, 8, 2, vec![vec![1; 8]; 8]).unwrap();
    let G4Check::Fails { x, witnesses } = verify_g4(&g, &Budget::default()).unwrap() else {
        panic!("constant matrix must fail");
    };
    assert!(x.len() <= g.h);
    for a in &witnesses {
        let hits = x
            .iter()
            .filter(|b| g.adjacent_labels(a.group, &a.labels, b.part, b.index))
            .count();
        assert!(hits > g.k);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn row_witness_is_adjacent_to_its_columns(seed in any::<u64>(), k in 1usize..4, n in 1usize..9) {
        let g = build_gadget(k, n, 2, &GadgetOptions { seed, ..GadgetOptions::default() }).unwrap().gadget;
        let b: Vec<usize> = (0..k).map(|j| (seed as usize >> (4 * j)) % n).collect();
        for group in 0..g.m {
            let a = g.row_witness(group, &b);
            for (j, &c) in b.iter().enumerate() {
                prop_assert!(g.adjacent_labels(group, &a.labels, j, c));
            }
        }
    }

    #[test]
    fn same_seed_same_matrix(seed in any::<u64>()) {
        let o = GadgetOptions { seed, ..GadgetOptions::default() };
        prop_assert_eq!(build_gadget(2, 6, 4, &o).unwrap().gadget, build_gadget(2, 6, 4, &o).unwrap().gadget);
    }
}
