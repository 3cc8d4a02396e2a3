//! Explicit leaf roots.
//!
//! Direct constructions for `k = 2, 3`, the distance-preserving tree
//! transformations (`lift_plus_two`, `stretch_3_to_k`, `expand_similar`),
//! the gadget normalization for clique-with-pendant graphs, and the 4-to-5
//! construction for 4-leaf powers with a degree-one vertex.

mod five;
mod gadget;

pub use five::{four_root, four_to_five, four_to_five_with, four_to_k, four_to_k_with, FiveConfig, FiveOutcome};
pub use gadget::{normalize_t0, normalize_t0_gadget, Normalized};

use log::debug;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{oracle_root, RootVerdict, SearchLimits};
use crate::recognize::{recognize_2, recognize_3, recognize_4, SimilarReduction};
use crate::tree::{verify_root, LeafTree, NodeId};

/// What a construction step did, for auditing a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub rule: Rule,
    /// Vertices of the handled subgraph, in the input graph's labels.
    pub vertices: Vec<usize>,
    pub surgery: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Small graph solved by exhaustive search.
    Base,
    Components,
    SimilarReduction,
    /// `G - u` has no similar pair: hang `u` four edges below `v1`'s neighbor.
    LeafExtension,
    /// `N(v1) - {u, v2}` is a clique.
    CliqueNeighborhood,
    /// Two halves, both with at least two vertices, glued along their gadgets.
    TwoGadgets,
    /// One half is a single vertex.
    OneGadget,
    Normalize,
    /// A structural claim failed; solved by exhaustive search instead.
    OracleFallback,
}

/// Ordered audit log of a construction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub entries: Vec<TraceEntry>,
}

impl ConstructionTrace {
    pub(crate) fn push(&mut self, rule: Rule, vertices: Vec<usize>, surgery: impl Into<String>) {
        let surgery = surgery.into();
        debug!("{rule:?} on {vertices:?}: {surgery}");
        self.entries.push(TraceEntry { rule, vertices, surgery });
    }

    pub fn count(&self, rule: Rule) -> usize {
        self.entries.iter().filter(|e| e.rule == rule).count()
    }
}

pub(crate) fn ensure_root(g: &Graph, t: &LeafTree, k: usize, what: &str) -> Result<()> {
    match verify_root(g, t, k)? {
        None => Ok(()),
        Some(v) => Err(Error::Construction(format!(
            "{what}: pair ({}, {}) at distance {} but adjacent = {}",
            v.u, v.v, v.distance, v.adjacent
        ))),
    }
}

/// One star per clique; consecutive star centers are adjacent, so leaves in
/// different cliques are at distance at least 3.
/// Which construction `build_root` used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootMethod {
    CliqueStars,
    TwinSkeleton,
    ReducedSearch,
    FourToFive,
    Search,
}

impl std::fmt::Display for RootMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            RootMethod::CliqueStars => "clique stars",
            RootMethod::TwinSkeleton => "similar-class skeleton",
            RootMethod::ReducedSearch => "exhaustive search on reduced components",
            RootMethod::FourToFive => "4-to-5 construction, lifted",
            RootMethod::Search => "exhaustive search",
        })
    }
}

/// A k-leaf root by the cheapest applicable route: direct for `k = 2, 3`,
/// search on the reduced components for `k = 4`, the 4-to-5 construction
/// for `k >= 5` when the graph is a 4-leaf power with a leaf, and
/// exhaustive search otherwise.
pub fn build_root(g: &Graph, k: usize, limits: &SearchLimits) -> Result<(LeafTree, RootMethod)> {
    match k {
        0 | 1 => Err(Error::BadK(k)),
        2 => Ok((build_2_root(g)?, RootMethod::CliqueStars)),
        3 => Ok((build_3_root(g)?, RootMethod::TwinSkeleton)),
        4 => Ok((four_root(g, limits)?, RootMethod::ReducedSearch)),
        _ if !g.leaves().is_empty() && recognize_4(g).is_member() => {
            let cfg = FiveConfig { limits: *limits, ..FiveConfig::default() };
            Ok((four_to_k_with(g, k, &cfg)?.tree, RootMethod::FourToFive))
        }
        _ => match oracle_root(g, k, limits)? {
            RootVerdict::Root(t) => Ok((t, RootMethod::Search)),
            RootVerdict::NoRoot => Err(Error::NotLeafPower(k)),
            RootVerdict::Inconclusive(r) => Err(Error::Inconclusive(r.reason)),
        },
    }
}

pub fn build_2_root(g: &Graph) -> Result<LeafTree> {
    if !recognize_2(g).is_member() {
        return Err(Error::NotLeafPower(2));
    }
    let comps = g.connected_components();
    if let [only] = comps.as_slice() {
        let t = LeafTree::star(only)?;
        ensure_root(g, &t, 2, "2-root")?;
        return Ok(t);
    }
    let mut t = LeafTree::blank();
    let mut prev: Option<NodeId> = None;
    for comp in &comps {
        let center = t.add_node();
        for &v in comp {
            t.attach_in_place(center, 1, v)?;
        }
        if let Some(p) = prev {
            t.link(p, center);
        }
        prev = Some(center);
    }
    t.check()?;
    ensure_root(g, &t, 2, "2-root")?;
    Ok(t)
}

/// Per component: complete components become stars; otherwise every class
/// of similar vertices hangs off its own skeleton node, and skeleton nodes
/// follow the (tree-shaped) quotient graph. Components are joined far apart.
pub fn build_3_root(g: &Graph) -> Result<LeafTree> {
    if !recognize_3(g).is_member() {
        return Err(Error::NotLeafPower(3));
    }
    let mut parts = Vec::new();
    for comp in g.connected_components() {
        let (h, map) = g.induced_subgraph(&comp)?;
        parts.push(component_3_root(&h)?.relabeled(&map)?);
    }
    let t = join_far(parts, 3)?;
    ensure_root(g, &t, 3, "3-root")?;
    Ok(t)
}

fn component_3_root(h: &Graph) -> Result<LeafTree> {
    if h.is_complete() {
        let all: Vec<usize> = h.vertices().collect();
        return LeafTree::star(&all);
    }
    // similar classes: vertices with equal closed neighborhoods
    let mut class_of = vec![usize::MAX; h.n()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in h.vertices() {
        if class_of[v] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let members: Vec<usize> = (v..h.n()).filter(|&w| w == v || h.are_similar(v, w)).collect();
        for &w in &members {
            class_of[w] = c;
        }
        classes.push(members);
    }
    let mut quotient = Vec::new();
    for (a, b) in h.edges() {
        let (x, y) = (class_of[a], class_of[b]);
        if x != y && !quotient.contains(&(x.min(y), x.max(y))) {
            quotient.push((x.min(y), x.max(y)));
        }
    }
    if quotient.len() + 1 != classes.len() {
        return Err(Error::Construction(format!(
            "similar-class quotient has {} classes and {} edges, not a tree",
            classes.len(),
            quotient.len()
        )));
    }
    let mut t = LeafTree::blank();
    let skeleton: Vec<NodeId> = classes.iter().map(|_| t.add_node()).collect();
    for (c, members) in classes.iter().enumerate() {
        for &v in members {
            t.attach_in_place(skeleton[c], 1, v)?;
        }
    }
    for &(x, y) in &quotient {
        t.link(skeleton[x], skeleton[y]);
    }
    t.check()?;
    Ok(t)
}

/// Joins trees with disjoint labels through a fresh hub so that leaves of
/// different trees end up more than `k` apart.
pub(crate) fn join_far(mut trees: Vec<LeafTree>, k: usize) -> Result<LeafTree> {
    match trees.len() {
        0 => return Err(Error::EmptyTree),
        1 => return Ok(trees.pop().unwrap()),
        _ => {}
    }
    // anchor-to-hub paths of length `reach` put cross pairs at >= 2 * reach > k
    let reach = k / 2 + 1;
    let mut t = LeafTree::blank();
    let hub = t.add_node();
    for part in &trees {
        let anchor = part.internal_nodes().next().unwrap_or_else(|| part.nodes().next().unwrap());
        let off = t.absorb(part)?;
        let mut prev = hub;
        for _ in 1..reach {
            let x = t.add_node();
            t.link(prev, x);
            prev = x;
        }
        t.link(prev, anchor + off);
    }
    t.check()?;
    Ok(t)
}

/// Puts one new node on every edge ending in a leaf. Every leaf-to-leaf
/// distance grows by exactly 2, so a `k`-leaf root becomes a `(k+2)`-leaf
/// root of the same graph.
pub fn lift_plus_two(t: &LeafTree) -> LeafTree {
    let mut out = t.clone();
    let leaves: Vec<usize> = t.labels().collect();
    for l in leaves {
        if let Ok(nb) = out.leaf_neighbor(l) {
            let leaf = out.node(l).expect("label present");
            out.subdivide_in_place(leaf, nb, 1).expect("leaf edge exists");
        }
    }
    out
}

/// Subdivides every edge between two unlabeled nodes with `k - 3` new
/// nodes: distance-2 pairs stay at 2, distance-3 pairs move to `k`, and
/// pairs at distance >= 4 move to at least `2k - 2 > k`.
pub fn stretch_3_to_k(t: &LeafTree, k: usize) -> Result<LeafTree> {
    if k < 3 {
        return Err(Error::BadK(k));
    }
    let mut out = t.clone();
    let inner: Vec<(NodeId, NodeId)> =
        t.edges().filter(|&(a, b)| t.label(a).is_none() && t.label(b).is_none()).collect();
    for (a, b) in inner {
        out.subdivide_in_place(a, b, k - 3)?;
    }
    if out.leaf_power(k)? != t.leaf_power(3)? {
        return Err(Error::Precondition("tree is not a stretchable 3-leaf root".into()));
    }
    Ok(out)
}

/// Re-inserts the vertices deleted by a similar-vertex reduction. Each
/// deleted `u` gets a single edge to the neighbor of its twin `v`'s leaf:
/// then `d(u, v) = 2` and `d(u, x) = d(v, x)` for every other leaf `x`.
pub fn expand_similar(t: &LeafTree, red: &SimilarReduction, k: usize) -> Result<LeafTree> {
    if k < 2 {
        return Err(Error::BadK(k));
    }
    ensure_root(&red.reduced, t, k, "root of the reduced graph").map_err(|e| Error::Precondition(e.to_string()))?;
    let mut out = t.relabeled(&red.kept)?;
    for &(kept, deleted) in red.steps.iter().rev() {
        out = match out.leaf_neighbor(kept) {
            Ok(nb) => {
                out.attach_in_place(nb, 1, deleted)?;
                out
            }
            Err(_) => LeafTree::star(&[kept, deleted])?,
        };
    }
    Ok(out)
}

/// Removes similar vertices, roots the reduced graph with `root`, and puts
/// the removed vertices back.
pub(crate) fn via_reduction(
    g: &Graph,
    k: usize,
    root: impl FnOnce(&Graph) -> Result<LeafTree>,
) -> Result<(LeafTree, SimilarReduction)> {
    let red = crate::recognize::reduce_similar(g);
    let t = root(&red.reduced)?;
    let full = expand_similar(&t, &red, k)?;
    Ok((full, red))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognize::reduce_similar;
    use crate::tree::is_root;

    #[test]
    fn two_roots() {
        let k3 = build_2_root(&Graph::complete(3)).unwrap();
        assert_eq!(k3.node_count(), 4);
        let two_k2 = Graph::complete(2).disjoint_union(&Graph::complete(2));
        let t = build_2_root(&two_k2).unwrap();
        assert!(is_root(&two_k2, &t, 2));
        assert!(t.leaf_distance(0, 2).unwrap() >= 3);
        assert_eq!(build_2_root(&Graph::empty(1)).unwrap().node_count(), 1);
        let mixed = Graph::empty(2).disjoint_union(&Graph::complete(3));
        assert!(is_root(&mixed, &build_2_root(&mixed).unwrap(), 2));
        assert_eq!(build_2_root(&Graph::path(3)), Err(Error::NotLeafPower(2)));
    }

    #[test]
    fn three_roots() {
        let p4 = Graph::path(4);
        let t = build_3_root(&p4).unwrap();
        assert!(is_root(&p4, &t, 3));
        // caterpillar: four spine nodes, three spine edges
        assert_eq!(t.internal_nodes().count(), 4);
        assert_eq!(build_3_root(&Graph::complete(4)).unwrap().node_count(), 5);
        let g = Graph::complete(3).disjoint_union(&Graph::empty(1));
        let t = build_3_root(&g).unwrap();
        assert!(is_root(&g, &t, 3));
        assert_eq!(build_3_root(&Graph::cycle(4)), Err(Error::NotLeafPower(3)));
    }

    #[test]
    fn lift_examples() {
        let star = LeafTree::star(&[0, 1, 2]).unwrap();
        let lifted = lift_plus_two(&star);
        assert_eq!(lifted.leaf_power(4).unwrap(), Graph::complete(3));
        assert_eq!(lifted.leaf_distance(0, 1).unwrap(), 4);
        let mut pair = LeafTree::single(0);
        pair.attach_in_place(pair.node(0).unwrap(), 1, 1).unwrap();
        assert_eq!(lift_plus_two(&pair).leaf_distance(0, 1).unwrap(), 3);
        assert_eq!(lift_plus_two(&LeafTree::single(4)).node_count(), 1);
    }

    #[test]
    fn stretch_examples() {
        let p4 = Graph::path(4);
        let t = build_3_root(&p4).unwrap();
        assert!(stretch_3_to_k(&t, 3).unwrap().same_leaf_metric(&t));
        let s = stretch_3_to_k(&t, 5).unwrap();
        assert!(is_root(&p4, &s, 5));
        assert_eq!(s.leaf_distance(0, 1).unwrap(), 5);
        assert!(s.leaf_distance(0, 2).unwrap() >= 8);
        let star = LeafTree::star(&[0, 1, 2]).unwrap();
        assert!(stretch_3_to_k(&star, 7).unwrap().same_leaf_metric(&star));
    }

    #[test]
    fn expand_examples() {
        for n in 2..=3 {
            let g = Graph::complete(n);
            let red = reduce_similar(&g);
            let t = expand_similar(&LeafTree::single(0), &red, 2).unwrap();
            assert!(is_root(&g, &t, 2));
            assert_eq!(t.node_count(), n + 1);
        }
        // deep pendant: the twin still lands at distance 2
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3), (2, 3)]).unwrap();
        let red = reduce_similar(&g);
        assert_eq!(red.steps, vec![(2, 3)]);
        let t = crate::oracle::oracle_root(&red.reduced, 4, &Default::default()).unwrap().into_root().unwrap();
        let full = expand_similar(&t, &red, 4).unwrap();
        assert!(is_root(&g, &full, 4));
    }

    #[test]
    fn join_far_keeps_parts_apart() {
        for k in 2..=6 {
            let parts = vec![LeafTree::single(0), LeafTree::single(1), LeafTree::star(&[2, 3]).unwrap()];
            let t = join_far(parts, k).unwrap();
            let g = Graph::empty(2).disjoint_union(&Graph::complete(2));
            assert!(is_root(&g, &t, k), "k = {k}");
        }
    }
}
