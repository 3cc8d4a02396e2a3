//! Leaf-labeled trees and the surgeries used to build and reshape leaf roots.
//!
//! Node ids are opaque and come from a per-tree monotone counter, so ids of
//! surviving nodes are stable across every edit. Two trees are compared by
//! their leaf-distance matrices, never by ids.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub type NodeId = usize;

/// A tree whose labeled nodes are graph vertices.
#[derive(Clone, PartialEq, Eq)]
pub struct LeafTree {
    adj: BTreeMap<NodeId, BTreeSet<NodeId>>,
    label_of: BTreeMap<NodeId, usize>,
    node_of: BTreeMap<usize, NodeId>,
    next_id: NodeId,
}

/// First pair on which a candidate root and a graph disagree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    pub distance: usize,
    pub adjacent: bool,
}

impl LeafTree {
    /// The one-node root of `K_1`.
    pub fn single(label: usize) -> Self {
        let mut t = LeafTree::blank();
        let id = t.add_node();
        t.set_label(id, label);
        t
    }

    /// One unlabeled center with every label as a pendant leaf.
    pub fn star(labels: &[usize]) -> Result<Self> {
        match labels {
            [] => Err(Error::EmptyTree),
            [only] => Ok(LeafTree::single(*only)),
            _ => {
                let mut t = LeafTree::blank();
                let center = t.add_node();
                for &l in labels {
                    t.attach_in_place(center, 1, l)?;
                }
                Ok(t)
            }
        }
    }

    /// Builds and validates a tree from explicit nodes, edges and labels.
    pub fn from_parts(nodes: &[NodeId], edges: &[(NodeId, NodeId)], labels: &[(NodeId, usize)]) -> Result<Self> {
        let mut t = LeafTree::blank();
        for &v in nodes {
            if t.adj.insert(v, BTreeSet::new()).is_some() {
                return Err(Error::MalformedTree(format!("node {v} declared twice")));
            }
            t.next_id = t.next_id.max(v + 1);
        }
        for &(a, b) in edges {
            if !t.adj.contains_key(&a) || !t.adj.contains_key(&b) {
                return Err(Error::UnknownNode(if t.adj.contains_key(&a) { b } else { a }));
            }
            if a == b || t.adj[&a].contains(&b) {
                return Err(Error::MalformedTree(format!("bad edge {a}-{b}")));
            }
            t.link(a, b);
        }
        for &(node, label) in labels {
            if !t.adj.contains_key(&node) {
                return Err(Error::UnknownNode(node));
            }
            if t.node_of.contains_key(&label) || t.label_of.contains_key(&node) {
                return Err(Error::DuplicateLabel(label));
            }
            t.set_label(node, label);
        }
        t.check()?;
        Ok(t)
    }

    pub(crate) fn blank() -> Self {
        LeafTree { adj: BTreeMap::new(), label_of: BTreeMap::new(), node_of: BTreeMap::new(), next_id: 0 }
    }

    /// Checks every structural invariant of a leaf root.
    pub fn check(&self) -> Result<()> {
        let nodes = self.adj.len();
        if nodes == 0 {
            return Err(Error::EmptyTree);
        }
        let edges: usize = self.adj.values().map(BTreeSet::len).sum::<usize>() / 2;
        if edges + 1 != nodes {
            return Err(Error::MalformedTree(format!("{nodes} nodes but {edges} edges")));
        }
        let start = *self.adj.keys().next().unwrap();
        if self.bfs(start).len() != nodes {
            return Err(Error::MalformedTree("disconnected".into()));
        }
        for (&v, nb) in &self.adj {
            let labeled = self.label_of.contains_key(&v);
            if labeled && nb.len() > 1 {
                return Err(Error::MalformedTree(format!("labeled node {v} has degree {}", nb.len())));
            }
            if !labeled && nb.len() <= 1 {
                return Err(Error::MalformedTree(format!("unlabeled leaf {v}")));
            }
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.node_count() - 1
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.adj.keys().copied()
    }

    /// Edges `(a, b)` with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adj.iter().flat_map(|(&a, nb)| nb.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    pub fn has_node(&self, v: NodeId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.adj.get(&a).is_some_and(|nb| nb.contains(&b))
    }

    pub fn neighbors(&self, v: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    /// Labels in ascending order.
    pub fn labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.node_of.keys().copied()
    }

    pub fn label_count(&self) -> usize {
        self.node_of.len()
    }

    pub fn label(&self, node: NodeId) -> Option<usize> {
        self.label_of.get(&node).copied()
    }

    pub fn node(&self, label: usize) -> Result<NodeId> {
        self.node_of.get(&label).copied().ok_or(Error::UnknownLabel(label))
    }

    pub fn is_internal(&self, v: NodeId) -> bool {
        self.has_node(v) && !self.label_of.contains_key(&v)
    }

    /// Unlabeled nodes in ascending id order.
    pub fn internal_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.adj.keys().copied().filter(|v| !self.label_of.contains_key(v))
    }

    /// Exclusive upper bound on node ids in use.
    pub fn id_bound(&self) -> NodeId {
        self.next_id
    }

    /// The unique tree neighbor of a labeled leaf.
    pub fn leaf_neighbor(&self, label: usize) -> Result<NodeId> {
        let v = self.node(label)?;
        self.neighbors(v).next().ok_or_else(|| Error::Precondition(format!("leaf {label} is the whole tree")))
    }

    /// Where the pendant path of `label` meets the rest of the tree, and the
    /// length of that path. The path runs through unlabeled degree-2 nodes.
    pub fn pendant_path(&self, label: usize) -> Result<(NodeId, usize)> {
        let mut prev = self.node(label)?;
        let mut cur = self.leaf_neighbor(label)?;
        let mut len = 1;
        while self.label(cur).is_none() && self.degree(cur) == 2 {
            let next = self.neighbors(cur).find(|&w| w != prev).unwrap();
            prev = cur;
            cur = next;
            len += 1;
        }
        Ok((cur, len))
    }

    /// The same tree with every label `l` replaced by `map[l]`.
    pub fn relabeled(&self, map: &[usize]) -> Result<LeafTree> {
        let mut t = LeafTree { label_of: BTreeMap::new(), node_of: BTreeMap::new(), ..self.clone() };
        for (&v, &l) in &self.label_of {
            let new = *map.get(l).ok_or(Error::UnknownLabel(l))?;
            if t.node_of.contains_key(&new) {
                return Err(Error::DuplicateLabel(new));
            }
            t.set_label(v, new);
        }
        Ok(t)
    }

    /// Nodes on the path from `a` to `b`, both ends included.
    pub fn path(&self, a: NodeId, b: NodeId) -> Result<Vec<NodeId>> {
        for v in [a, b] {
            if !self.has_node(v) {
                return Err(Error::UnknownNode(v));
            }
        }
        let mut prev = BTreeMap::from([(a, a)]);
        let mut queue = VecDeque::from([a]);
        while let Some(x) = queue.pop_front() {
            if x == b {
                break;
            }
            for y in self.neighbors(x) {
                if let std::collections::btree_map::Entry::Vacant(e) = prev.entry(y) {
                    e.insert(x);
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![b];
        let mut cur = b;
        while cur != a {
            cur = prev[&cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    pub fn node_distance(&self, a: NodeId, b: NodeId) -> Result<usize> {
        Ok(self.path(a, b)?.len() - 1)
    }

    /// Number of edges between the leaves labeled `a` and `b`.
    pub fn leaf_distance(&self, a: usize, b: usize) -> Result<usize> {
        self.node_distance(self.node(a)?, self.node(b)?)
    }

    fn bfs(&self, start: NodeId) -> BTreeMap<NodeId, usize> {
        let mut dist = BTreeMap::from([(start, 0)]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let d = dist[&x];
            for y in self.neighbors(x) {
                if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(y) {
                    e.insert(d + 1);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Distances from `node` to every labeled leaf.
    pub fn distances_from(&self, node: NodeId) -> BTreeMap<usize, usize> {
        self.bfs(node).into_iter().filter_map(|(v, d)| self.label(v).map(|l| (l, d))).collect()
    }

    /// All pairwise leaf distances, keyed by `(a, b)` with `a < b`.
    pub fn leaf_distances(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for (&a, &node) in &self.node_of {
            for (b, d) in self.distances_from(node) {
                if a < b {
                    out.insert((a, b), d);
                }
            }
        }
        out
    }

    /// Same labels and same pairwise distances.
    pub fn same_leaf_metric(&self, other: &LeafTree) -> bool {
        self.labels().eq(other.labels()) && self.leaf_distances() == other.leaf_distances()
    }

    /// The graph on the labels in which two vertices are adjacent iff their
    /// leaves are at distance at most `k`.
    pub fn leaf_power(&self, k: usize) -> Result<Graph> {
        let n = self.label_count();
        if self.node_of.keys().enumerate().any(|(i, &l)| i != l) {
            return Err(Error::NonContiguousLabels(n));
        }
        let edges = self.leaf_distances().into_iter().filter(|&(_, d)| d <= k).map(|(p, _)| p);
        Ok(Graph::from_edge_iter(n, edges))
    }

    // --- surgery -------------------------------------------------------

    /// Replaces edge `a-b` with a path through `m` fresh unlabeled nodes.
    pub fn subdivide_edge(&self, a: NodeId, b: NodeId, m: usize) -> Result<LeafTree> {
        let mut t = self.clone();
        t.subdivide_in_place(a, b, m)?;
        Ok(t)
    }

    /// Adds a path of `len` edges from `at` to a new leaf `label`.
    pub fn attach_pendant_path(&self, at: NodeId, len: usize, label: usize) -> Result<LeafTree> {
        let mut t = self.clone();
        t.attach_in_place(at, len, label)?;
        Ok(t)
    }

    /// Removes the leaf `label` together with the chain of unlabeled nodes
    /// that would otherwise become leaves.
    pub fn delete_leaf_path(&self, label: usize) -> Result<LeafTree> {
        let mut t = self.clone();
        t.delete_in_place(label)?;
        Ok(t)
    }

    /// Re-attaches the pendant path of `label` at `new_at`, keeping its length.
    pub fn move_pendant_path(&self, label: usize, new_at: NodeId) -> Result<LeafTree> {
        let mut t = self.clone();
        let len = t.delete_in_place(label)?.len();
        if !t.has_node(new_at) {
            return Err(Error::UnknownNode(new_at));
        }
        t.attach_in_place(new_at, len, label)?;
        Ok(t)
    }

    /// Merges the two unlabeled endpoints of `a-b` into `a`.
    pub fn contract_edge(&self, a: NodeId, b: NodeId) -> Result<LeafTree> {
        let mut t = self.clone();
        t.contract_in_place(a, b)?;
        Ok(t)
    }

    /// Disjoint union of `t1` and `t2` plus the edge `a1-a2`. Node ids of
    /// `t2` are shifted by `t1.id_bound()` in the result.
    pub fn join_trees(t1: &LeafTree, a1: NodeId, t2: &LeafTree, a2: NodeId) -> Result<LeafTree> {
        for (t, a) in [(t1, a1), (t2, a2)] {
            if !t.has_node(a) {
                return Err(Error::UnknownNode(a));
            }
            if t.label(a).is_some() && t.degree(a) > 0 {
                return Err(Error::MalformedTree(format!("cannot join at labeled leaf {a}")));
            }
        }
        let mut t = t1.clone();
        let off = t.absorb(t2)?;
        t.link(a1, a2 + off);
        debug_assert!(t.check().is_ok());
        Ok(t)
    }

    // --- in-place primitives used by the constructions -----------------

    /// Copies `other` into `self` without linking it; returns the offset
    /// added to `other`'s node ids.
    pub(crate) fn absorb(&mut self, other: &LeafTree) -> Result<NodeId> {
        if let Some(l) = other.labels().find(|l| self.node_of.contains_key(l)) {
            return Err(Error::DuplicateLabel(l));
        }
        let off = self.next_id;
        for (&v, nb) in &other.adj {
            self.adj.insert(v + off, nb.iter().map(|&w| w + off).collect());
        }
        for (&v, &l) in &other.label_of {
            self.set_label(v + off, l);
        }
        self.next_id = off + other.next_id;
        Ok(off)
    }

    /// Labels reachable from `via` without passing through `from`.
    pub(crate) fn side_labels(&self, from: NodeId, via: NodeId) -> Vec<usize> {
        let mut seen = BTreeSet::from([from, via]);
        let mut stack = vec![via];
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.extend(self.label(v));
            for w in self.neighbors(v) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        out
    }

    /// Re-hangs the branch rooted at `root` from `old` onto `new`.
    pub(crate) fn move_branch(&mut self, old: NodeId, root: NodeId, new: NodeId) -> Result<()> {
        if !self.has_edge(old, root) {
            return Err(Error::NotAnEdge(old, root));
        }
        self.unlink(old, root);
        self.link(new, root);
        Ok(())
    }

    pub(crate) fn add_node(&mut self) -> NodeId {
        let id = self.next_id;
        self.next_id += 1;
        self.adj.insert(id, BTreeSet::new());
        id
    }

    fn set_label(&mut self, node: NodeId, label: usize) {
        self.label_of.insert(node, label);
        self.node_of.insert(label, node);
    }

    pub(crate) fn link(&mut self, a: NodeId, b: NodeId) {
        self.adj.get_mut(&a).unwrap().insert(b);
        self.adj.get_mut(&b).unwrap().insert(a);
    }

    fn unlink(&mut self, a: NodeId, b: NodeId) {
        self.adj.get_mut(&a).unwrap().remove(&b);
        self.adj.get_mut(&b).unwrap().remove(&a);
    }

    fn remove_node(&mut self, v: NodeId) {
        if let Some(nb) = self.adj.remove(&v) {
            for w in nb {
                self.adj.get_mut(&w).unwrap().remove(&v);
            }
        }
        if let Some(l) = self.label_of.remove(&v) {
            self.node_of.remove(&l);
        }
    }

    /// Returns the new nodes in order from `a` towards `b`.
    pub(crate) fn subdivide_in_place(&mut self, a: NodeId, b: NodeId, m: usize) -> Result<Vec<NodeId>> {
        if !self.has_edge(a, b) {
            return Err(Error::NotAnEdge(a, b));
        }
        self.unlink(a, b);
        let mut prev = a;
        let mut created = Vec::with_capacity(m);
        for _ in 0..m {
            let x = self.add_node();
            self.link(prev, x);
            created.push(x);
            prev = x;
        }
        self.link(prev, b);
        Ok(created)
    }

    /// Returns the node of the new leaf.
    pub(crate) fn attach_in_place(&mut self, at: NodeId, len: usize, label: usize) -> Result<NodeId> {
        if !self.has_node(at) {
            return Err(Error::UnknownNode(at));
        }
        if self.node_of.contains_key(&label) {
            return Err(Error::DuplicateLabel(label));
        }
        if len == 0 {
            return Err(Error::Precondition("pendant path length must be at least 1".into()));
        }
        if self.label(at).is_some() && self.degree(at) > 0 {
            return Err(Error::MalformedTree(format!("cannot attach below labeled leaf node {at}")));
        }
        let mut prev = at;
        for _ in 0..len {
            let x = self.add_node();
            self.link(prev, x);
            prev = x;
        }
        self.set_label(prev, label);
        Ok(prev)
    }

    /// Returns the removed nodes, leaf first. Their count is the length of
    /// the removed pendant path.
    pub(crate) fn delete_in_place(&mut self, label: usize) -> Result<Vec<NodeId>> {
        let leaf = self.node(label)?;
        if self.node_count() == 1 {
            return Err(Error::EmptyTree);
        }
        let mut removed = vec![leaf];
        let mut next = self.neighbors(leaf).next();
        self.remove_node(leaf);
        while let Some(v) = next {
            if self.label(v).is_some() || self.degree(v) > 1 || self.node_count() == 1 {
                break;
            }
            next = self.neighbors(v).next();
            self.remove_node(v);
            removed.push(v);
        }
        Ok(removed)
    }

    pub(crate) fn contract_in_place(&mut self, a: NodeId, b: NodeId) -> Result<()> {
        if !self.has_edge(a, b) {
            return Err(Error::NotAnEdge(a, b));
        }
        if self.label(a).is_some() || self.label(b).is_some() {
            return Err(Error::PendantContraction(a, b));
        }
        let moved: Vec<NodeId> = self.neighbors(b).filter(|&w| w != a).collect();
        self.remove_node(b);
        for w in moved {
            self.link(a, w);
        }
        Ok(())
    }
}

impl fmt::Debug for LeafTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |v: NodeId| match self.label(v) {
            Some(l) => format!("L{l}"),
            None => format!("n{v}"),
        };
        let edges: Vec<String> = self.edges().map(|(a, b)| format!("{}-{}", name(a), name(b))).collect();
        if edges.is_empty() {
            let only = self.nodes().next().map(name).unwrap_or_default();
            return write!(f, "LeafTree[{only}]");
        }
        write!(f, "LeafTree[{}]", edges.join(" "))
    }
}

/// Checks `t` against `g` at threshold `k`. Returns the first (in
/// lexicographic order) pair whose adjacency disagrees with the leaf
/// distance, or `None` when `t` is a `k`-leaf root of `g`.
pub fn verify_root(g: &Graph, t: &LeafTree, k: usize) -> Result<Option<Violation>> {
    if t.label_count() != g.n() || !t.labels().eq(g.vertices()) {
        return Err(Error::LabelMismatch);
    }
    for u in g.vertices() {
        let dist = t.distances_from(t.node(u)?);
        for v in u + 1..g.n() {
            let distance = dist[&v];
            let adjacent = g.has_edge(u, v);
            if adjacent != (distance <= k) {
                return Ok(Some(Violation { u, v, distance, adjacent }));
            }
        }
    }
    Ok(None)
}

/// Convenience wrapper: `true` iff `t` is a `k`-leaf root of `g`.
pub fn is_root(g: &Graph, t: &LeafTree, k: usize) -> bool {
    matches!(verify_root(g, t, k), Ok(None))
}

/// Node handles inside a tree containing the fixed clique-plus-leaf gadget:
/// `c1 - a - b - hub` with each other clique vertex two edges below `hub`
/// and `u` four edges below `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetNodes {
    pub a: NodeId,
    pub b: NodeId,
    pub hub: NodeId,
}

/// The gadget tree on clique `c` (first entry plays `c1`) and leaf `u`:
/// `d(c1, u) = 5`, `d(c1, ci) = 5`, `d(ci, cj) = 4`.
pub fn t0_tree_on(c: &[usize], u: usize) -> Result<(LeafTree, GadgetNodes)> {
    if c.len() < 2 {
        return Err(Error::Precondition("gadget needs a clique of size at least 2".into()));
    }
    let mut t = LeafTree::blank();
    let c1 = t.add_node();
    t.set_label(c1, c[0]);
    let a = t.add_node();
    let b = t.add_node();
    let hub = t.add_node();
    t.link(c1, a);
    t.link(a, b);
    t.link(b, hub);
    for &ci in &c[1..] {
        t.attach_in_place(hub, 2, ci)?;
    }
    t.attach_in_place(a, 4, u)?;
    t.check()?;
    Ok((t, GadgetNodes { a, b, hub }))
}

/// The gadget with clique labels `0..t` and leaf label `t`.
pub fn t0_tree(t: usize) -> Result<LeafTree> {
    let clique: Vec<usize> = (0..t).collect();
    Ok(t0_tree_on(&clique, t)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_tree(len: usize) -> LeafTree {
        // leaf 0 - internal ... - leaf 1 with `len` edges
        let mut t = LeafTree::single(0);
        let start = t.node(0).unwrap();
        t.attach_in_place(start, len, 1).unwrap();
        t
    }

    #[test]
    fn distance_examples() {
        let s = LeafTree::star(&[0, 1, 2]).unwrap();
        assert_eq!(s.leaf_distance(0, 1).unwrap(), 2);
        assert_eq!(s.leaf_distance(2, 2).unwrap(), 0);
        let t0 = t0_tree(3).unwrap();
        assert_eq!(t0.leaf_distance(0, 3).unwrap(), 5);
        assert_eq!(t0.leaf_distance(1, 2).unwrap(), 4);
        assert_eq!(t0.leaf_distance(0, 2).unwrap(), 5);
        assert_eq!(s.leaf_distance(0, 9), Err(Error::UnknownLabel(9)));
    }

    #[test]
    fn leaf_power_examples() {
        let s = LeafTree::star(&[0, 1, 2]).unwrap();
        assert_eq!(s.leaf_power(2).unwrap(), Graph::complete(3));
        let p = path_tree(3);
        assert_eq!(p.leaf_power(2).unwrap(), Graph::empty(2));
        assert_eq!(p.leaf_power(3).unwrap(), Graph::complete(2));
        let h = t0_tree(3).unwrap().leaf_power(5).unwrap();
        let expected = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        assert_eq!(h, expected);
        let two = LeafTree::star(&[0, 2]).unwrap();
        assert_eq!(two.leaf_power(2), Err(Error::NonContiguousLabels(2)));
    }

    #[test]
    fn verify_examples() {
        let s = LeafTree::star(&[0, 1, 2]).unwrap();
        assert_eq!(verify_root(&Graph::complete(3), &s, 2).unwrap(), None);
        let bad = verify_root(&Graph::complete(3), &s, 1).unwrap().unwrap();
        assert!(bad.adjacent && bad.distance == 2);
        let h = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        assert!(is_root(&h, &t0_tree(3).unwrap(), 5));
        assert_eq!(verify_root(&Graph::complete(4), &s, 2), Err(Error::LabelMismatch));
    }

    #[test]
    fn t0_shape() {
        let t = t0_tree(2).unwrap();
        // c1, a, b, hub, one two-edge branch, one four-edge branch
        assert_eq!(t.node_count(), 10);
        assert_eq!(t.leaf_distance(0, 2).unwrap(), 5);
        assert_eq!(t.leaf_distance(0, 1).unwrap(), 5);
        // P3 u - c1 - c2
        assert_eq!(t.leaf_power(5).unwrap(), Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap());
        assert!(t0_tree(1).is_err());
    }

    #[test]
    fn subdivide_examples() {
        let s = LeafTree::star(&[0, 1]).unwrap();
        let leaf = s.node(0).unwrap();
        let center = s.leaf_neighbor(0).unwrap();
        assert_eq!(s.subdivide_edge(center, leaf, 1).unwrap().leaf_distance(0, 1).unwrap(), 3);
        let (t, g) = t0_tree_on(&[0, 1], 2).unwrap();
        let t = t.subdivide_edge(g.a, g.b, 2).unwrap();
        assert_eq!(t.leaf_distance(0, 1).unwrap(), 7);
        assert_eq!(s.subdivide_edge(leaf, leaf, 1), Err(Error::NotAnEdge(leaf, leaf)));
    }

    #[test]
    fn attach_examples() {
        let s = LeafTree::star(&[0, 1]).unwrap();
        let center = s.leaf_neighbor(0).unwrap();
        let s3 = s.attach_pendant_path(center, 1, 2).unwrap();
        assert!(s3.same_leaf_metric(&LeafTree::star(&[0, 1, 2]).unwrap()));
        assert_eq!(s.attach_pendant_path(center, 1, 0), Err(Error::DuplicateLabel(0)));
        assert_eq!(s.attach_pendant_path(99, 1, 5), Err(Error::UnknownNode(99)));

        let (t, _) = t0_tree_on(&[0, 1], 2).unwrap();
        let t = t.delete_leaf_path(2).unwrap();
        let p = t.leaf_neighbor(0).unwrap();
        let t = t.attach_pendant_path(p, 4, 2).unwrap();
        assert_eq!(t.leaf_distance(0, 2).unwrap(), 5);
    }

    #[test]
    fn delete_examples() {
        let s = LeafTree::star(&[0, 1, 2]).unwrap();
        let d = s.delete_leaf_path(2).unwrap();
        assert_eq!(d.node_count(), 3);
        assert_eq!(d.leaf_distance(0, 1).unwrap(), 2);
        d.check().unwrap();

        let t = t0_tree(2).unwrap();
        let without_u = t.delete_leaf_path(2).unwrap();
        assert_eq!(without_u.leaf_distance(0, 1).unwrap(), 5);
        assert_eq!(without_u.node_count(), 6);

        assert_eq!(LeafTree::single(0).delete_leaf_path(0), Err(Error::EmptyTree));
        assert_eq!(s.delete_leaf_path(7), Err(Error::UnknownLabel(7)));
        // a bare path collapses onto the surviving leaf
        assert_eq!(path_tree(3).delete_leaf_path(0).unwrap().node_count(), 1);
    }

    #[test]
    fn move_examples() {
        // 0 and 1 hang off x, 2 and 3 hang off y, x - y
        let mut t = LeafTree::star(&[0, 1]).unwrap();
        let x = t.leaf_neighbor(0).unwrap();
        let y = t.add_node();
        t.link(x, y);
        t.attach_in_place(y, 1, 2).unwrap();
        t.attach_in_place(y, 1, 3).unwrap();
        t.check().unwrap();
        let moved = t.move_pendant_path(0, y).unwrap();
        assert_eq!(moved.leaf_distance(0, 2).unwrap(), 2);
        assert_eq!(moved.leaf_distance(0, 1).unwrap(), 3);
        let same = t.move_pendant_path(0, x).unwrap();
        assert!(same.same_leaf_metric(&t));
        assert_eq!(t.move_pendant_path(0, t.node(0).unwrap()), Err(Error::UnknownNode(t.node(0).unwrap())));
    }

    #[test]
    fn contract_and_join_examples() {
        let (t, g) = t0_tree_on(&[0, 1], 2).unwrap();
        let c = t.contract_edge(g.a, g.b).unwrap();
        assert_eq!(c.leaf_distance(0, 1).unwrap(), 4);
        let leaf = t.node(0).unwrap();
        assert_eq!(t.contract_edge(leaf, g.a), Err(Error::PendantContraction(leaf, g.a)));

        let s = LeafTree::star(&[0, 1]).unwrap();
        let center = s.leaf_neighbor(0).unwrap();
        let sub = s.subdivide_edge(center, s.node(1).unwrap(), 1).unwrap();
        let mid = sub.leaf_neighbor(1).unwrap();
        assert!(sub.contract_edge(center, mid).unwrap().same_leaf_metric(&s));

        let mut p = LeafTree::single(0);
        let x = p.attach_in_place(p.node(0).unwrap(), 1, 9).unwrap();
        let _ = x;
        let p1 = path_tree(2);
        let mut q = LeafTree::single(5);
        let q_leaf = q.node(5).unwrap();
        let q_mid = q.add_node();
        q.link(q_leaf, q_mid);
        // q is not a valid tree yet (unlabeled leaf); join fixes it
        let j = LeafTree::join_trees(&p1, p1.leaf_neighbor(0).unwrap(), &q, q_mid).unwrap();
        j.check().unwrap();
        assert_eq!(j.leaf_distance(0, 5).unwrap(), 1 + 1 + 1);
        assert_eq!(
            LeafTree::join_trees(&p1, p1.leaf_neighbor(0).unwrap(), &p1, p1.leaf_neighbor(0).unwrap()),
            Err(Error::DuplicateLabel(0))
        );
    }

    #[test]
    fn from_parts_validates() {
        assert!(LeafTree::from_parts(&[0, 1, 2], &[(0, 1), (0, 2)], &[(1, 0), (2, 1)]).is_ok());
        assert!(LeafTree::from_parts(&[0, 1, 2], &[(0, 1)], &[(1, 0), (2, 1)]).is_err());
        assert!(LeafTree::from_parts(&[0, 1, 2], &[(0, 1), (0, 2)], &[(1, 0)]).is_err());
        assert!(LeafTree::from_parts(&[0, 1, 2], &[(0, 1), (0, 2)], &[(0, 0), (1, 1), (2, 2)]).is_err());
    }
}
