//! Finite simple undirected graphs on the vertex set `0..n`.
//!
//! Graphs are immutable once built. Every iteration order is ascending by
//! vertex index so that witnesses and derived structures are reproducible.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// A finite simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
}

/// Outcome of the chordality test, with a certificate either way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chordality {
    /// A perfect elimination ordering: each vertex is simplicial in the
    /// subgraph induced by itself and the vertices after it.
    Chordal(Vec<usize>),
    /// A chordless cycle of length at least four, in cyclic order.
    ChordlessCycle(Vec<usize>),
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![false; n * n], neighbors: vec![Vec::new(); n] }
    }

    /// Builds a graph, rejecting loops, duplicate edges and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        g.finish();
        Ok(g)
    }

    /// Builds a graph from any iterator of edges, silently ignoring repeats.
    pub(crate) fn from_edge_iter(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            debug_assert!(u != v && u < n && v < n);
            g.adj[u * n + v] = true;
            g.adj[v * n + u] = true;
        }
        g.finish();
        g
    }

    fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        if self.adj[u * self.n + v] {
            return Err(Error::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[u * self.n + v] = true;
        self.adj[v * self.n + u] = true;
        Ok(())
    }

    fn finish(&mut self) {
        let n = self.n;
        self.neighbors = (0..n).map(|u| (0..n).filter(|&v| self.adj[u * n + v]).collect()).collect();
    }

    pub fn complete(n: usize) -> Self {
        Graph::from_edge_iter(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    /// `P_n`: path on `n` vertices `0-1-...-(n-1)`.
    pub fn path(n: usize) -> Self {
        Graph::from_edge_iter(n, (1..n).map(|v| (v - 1, v)))
    }

    /// `C_n`: cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Graph::from_edge_iter(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edge_iter(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        Graph::from_edge_iter(self.n + other.n, self.edges().chain(other.edges().map(|(u, v)| (u + off, v + off))))
    }

    /// The same graph with one extra edge.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.try_add_edge(u, v)?;
        g.finish();
        Ok(g)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::from_edge_iter(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors.iter().enumerate().flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Closed neighborhood `N[v]`, sorted.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.neighbors[v].clone();
        let pos = out.partition_point(|&w| w < v);
        out.insert(pos, v);
        out
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    pub fn is_complete(&self) -> bool {
        self.edge_count() * 2 == self.n * self.n.saturating_sub(1)
    }

    /// Vertices of degree exactly one.
    pub fn leaves(&self) -> Vec<usize> {
        self.vertices().filter(|&v| self.degree(v) == 1).collect()
    }

    /// Vertices whose closed neighborhood is a clique.
    pub fn simplicial_vertices(&self) -> Vec<usize> {
        self.vertices().filter(|&v| self.is_clique(&self.neighbors[v])).collect()
    }

    pub fn are_similar(&self, u: usize, v: usize) -> bool {
        u != v && self.has_edge(u, v) && self.closed_neighborhood(u) == self.closed_neighborhood(v)
    }

    /// All pairs `(u, v)`, `u < v`, with `N[u] = N[v]`, lexicographically sorted.
    pub fn similar_pairs(&self) -> Vec<(usize, usize)> {
        let closed: Vec<Vec<usize>> = self.vertices().map(|v| self.closed_neighborhood(v)).collect();
        let mut out = Vec::new();
        for u in self.vertices() {
            for &v in &self.neighbors[u] {
                if v > u && closed[u] == closed[v] {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn has_similar_pair(&self) -> bool {
        self.edges().any(|(u, v)| self.closed_neighborhood(u) == self.closed_neighborhood(v))
    }

    /// Subgraph induced by `set`, relabeled `0..set.len()` in ascending
    /// order of the original labels. The returned map sends new labels to
    /// old ones (`map[new] = old`).
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut keep: Vec<usize> = set.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: self.n });
        }
        Ok((self.induced_unchecked(&keep), keep))
    }

    pub(crate) fn induced_unchecked(&self, sorted: &[usize]) -> Graph {
        let k = sorted.len();
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if self.has_edge(sorted[i], sorted[j]) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edge_iter(k, edges)
    }

    /// Induced subgraph on all vertices except those in `remove`.
    pub fn without(&self, remove: &[usize]) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = self.vertices().filter(|v| !remove.contains(v)).collect();
        (self.induced_unchecked(&keep), keep)
    }

    /// Connected components, each sorted, ordered by their minimum vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &self.neighbors[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Chordality test by repeated simplicial elimination.
    pub fn chordality(&self) -> Chordality {
        let mut alive: BTreeSet<usize> = self.vertices().collect();
        let mut order = Vec::with_capacity(self.n);
        while !alive.is_empty() {
            let next = alive.iter().copied().find(|&v| {
                let nb: Vec<usize> = self.neighbors[v].iter().copied().filter(|w| alive.contains(w)).collect();
                self.is_clique(&nb)
            });
            match next {
                Some(v) => {
                    alive.remove(&v);
                    order.push(v);
                }
                None => {
                    let (sub, map) = self
                        .induced_subgraph(&alive.iter().copied().collect::<Vec<_>>())
                        .expect("alive vertices are in range");
                    let cycle =
                        sub.find_chordless_cycle().expect("a graph without simplicial vertices has a chordless cycle");
                    return Chordality::ChordlessCycle(cycle.into_iter().map(|v| map[v]).collect());
                }
            }
        }
        Chordality::Chordal(order)
    }

    pub fn is_chordal(&self) -> bool {
        self.chordality().is_chordal()
    }

    /// For a center `v` and two nonadjacent neighbors `a < b`, the shortest
    /// `a`-`b` path avoiding the rest of `N[v]` closes a chordless cycle.
    fn find_chordless_cycle(&self) -> Option<Vec<usize>> {
        for v in self.vertices() {
            let nb = &self.neighbors[v];
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    if self.has_edge(a, b) {
                        continue;
                    }
                    let blocked = |x: usize| x == v || (x != a && x != b && self.has_edge(v, x));
                    if let Some(path) = self.shortest_path(a, b, blocked) {
                        let mut cycle = vec![v];
                        cycle.extend(path);
                        return Some(cycle);
                    }
                }
            }
        }
        None
    }

    fn shortest_path(&self, from: usize, to: usize, blocked: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
        let mut prev = vec![usize::MAX; self.n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut path = vec![to];
                let mut cur = to;
                while cur != from {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &y in &self.neighbors[x] {
                if prev[y] == usize::MAX && !blocked(y) {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Finds an induced `P_3` (`a-b-c` with `a`, `c` nonadjacent), if any.
    pub fn find_induced_p3(&self) -> Option<[usize; 3]> {
        for b in self.vertices() {
            let nb = &self.neighbors[b];
            for (i, &a) in nb.iter().enumerate() {
                if let Some(&c) = nb[i + 1..].iter().find(|&&c| !self.has_edge(a, c)) {
                    return Some([a, b, c]);
                }
            }
        }
        None
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}
