#![allow(dead_code)]

use leafpower::{Graph, LeafTree};
use rand::seq::SliceRandom;
use rand::Rng;

/// A uniformly grown random tree on at most `max_nodes` nodes whose
/// degree-one nodes, at most `max_leaves` of them, carry the labels
/// `0..L` in random order.
pub fn random_tree(rng: &mut impl Rng, max_nodes: usize, max_leaves: usize) -> LeafTree {
    loop {
        let m = rng.gen_range(1..=max_nodes);
        let edges: Vec<(usize, usize)> = (1..m).map(|i| (rng.gen_range(0..i), i)).collect();
        let mut degree = vec![0; m];
        for &(a, b) in &edges {
            degree[a] += 1;
            degree[b] += 1;
        }
        let mut leaves: Vec<usize> = (0..m).filter(|&v| degree[v] <= 1).collect();
        if leaves.len() > max_leaves {
            continue;
        }
        leaves.shuffle(rng);
        let labels: Vec<(usize, usize)> = leaves.iter().enumerate().map(|(l, &v)| (v, l)).collect();
        let nodes: Vec<usize> = (0..m).collect();
        return LeafTree::from_parts(&nodes, &edges, &labels).expect("grown tree is valid");
    }
}

/// Every vertex subset of size at least 4 inducing a cycle, by brute force.
pub fn has_induced_long_cycle(g: &Graph) -> bool {
    let n = g.n();
    (0u32..1 << n).filter(|s| s.count_ones() >= 4).any(|s| {
        let set: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let (h, _) = g.induced_subgraph(&set).unwrap();
        h.is_connected() && h.vertices().all(|v| h.degree(v) == 2)
    })
}
