mod common;

use leafpower::construct::{build_2_root, build_3_root, expand_similar, four_to_five, lift_plus_two, stretch_3_to_k};
use leafpower::io::{parse_graph, parse_tree, serialize_tree, write_graph, TreeFormat};
use leafpower::{is_root, recognize_2, recognize_3, recognize_4, reduce_similar, Graph, LeafTree};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tree() -> impl Strategy<Value = LeafTree> {
    any::<u64>().prop_map(|seed| common::random_tree(&mut ChaCha8Rng::seed_from_u64(seed), 14, 8))
}

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=8).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        proptest::sample::subsequence(pairs.clone(), 0..=pairs.len())
            .prop_map(move |e| Graph::from_edges(n, &e).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph_text_round_trip(g in graph()) {
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn tree_text_round_trip(t in tree()) {
        for format in [TreeFormat::Edgelist, TreeFormat::Newick, TreeFormat::Dot] {
            let back = parse_tree(&serialize_tree(&t, format), format).unwrap();
            prop_assert!(back.same_leaf_metric(&t), "{:?}", format);
        }
    }

    #[test]
    fn lifting_adds_two_to_every_leaf_distance(t in tree()) {
        let lifted = lift_plus_two(&t);
        for ((a, b), d) in t.leaf_distances() {
            prop_assert_eq!(lifted.leaf_distance(a, b).unwrap(), d + 2);
        }
    }

    #[test]
    fn leaf_powers_are_recognized_and_rooted(t in tree()) {
        let g2 = t.leaf_power(2).unwrap();
        prop_assert!(recognize_2(&g2).is_member());
        prop_assert!(is_root(&g2, &build_2_root(&g2).unwrap(), 2));
        let g3 = t.leaf_power(3).unwrap();
        prop_assert!(recognize_3(&g3).is_member());
        let r3 = build_3_root(&g3).unwrap();
        prop_assert!(is_root(&g3, &r3, 3));
        for k in 4..=7 {
            prop_assert!(is_root(&g3, &stretch_3_to_k(&r3, k).unwrap(), k));
        }
        let g4 = t.leaf_power(4).unwrap();
        prop_assert!(recognize_4(&g4).is_member());
    }

    #[test]
    fn similar_reduction_round_trip(t in tree()) {
        for k in 2..=5 {
            let g = t.leaf_power(k).unwrap();
            let red = reduce_similar(&g);
            red.check(&g).unwrap();
            prop_assert!(!red.reduced.has_similar_pair());
            // the input tree restricted to the kept vertices roots the quotient
            let mut sub = t.clone();
            for &(_, deleted) in red.steps.iter().rev() {
                sub = sub.delete_leaf_path(deleted).unwrap();
            }
            let sub = sub.relabeled(&inverse(&red.kept, g.n())).unwrap();
            prop_assert!(is_root(&red.reduced, &sub, k));
            prop_assert!(is_root(&g, &expand_similar(&sub, &red, k).unwrap(), k));
        }
    }
}

fn inverse(kept: &[usize], n: usize) -> Vec<usize> {
    let mut inv = vec![usize::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn four_to_five_on_random_4_leaf_powers(t in tree()) {
        let g = t.leaf_power(4).unwrap();
        prop_assume!(!g.leaves().is_empty());
        prop_assert!(is_root(&g, &four_to_five(&g).unwrap(), 5));
    }
}
