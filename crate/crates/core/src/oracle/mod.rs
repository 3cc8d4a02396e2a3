//! Ground truth by complete search.
//!
//! `oracle_root` decides whether a small graph is a `k`-leaf power by
//! walking every leaf-labeled tree topology whose internal nodes have
//! degree at least three, and for each topology every assignment of
//! integer edge weights in `1..=k`. A weight-`w` edge stands for a path of
//! `w` unit edges; degree-2 nodes are therefore covered by the weights.
//!
//! Weight cap: with at least three leaves every leaf-to-leaf path has at
//! least two edges, so an edge of weight `k` already pushes every path
//! through it past `k`; any heavier weight is equivalent.

mod canonical;

use std::time::{Duration, Instant};

pub use canonical::{
    are_isomorphic, canonical_form, canonical_graph, enumerate_graphs, MAX_CANONICAL_N, MAX_ENUMERATE_N,
};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree::LeafTree;

/// Bounds on the exhaustive search. A search that hits any bound reports
/// [`RootVerdict::Inconclusive`], never [`RootVerdict::NoRoot`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    /// Topologies with more internal nodes are skipped.
    pub max_internal: usize,
    /// Edge weights above this are not tried.
    pub max_weight: usize,
    pub time_budget: Duration,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_internal: 8, max_weight: 8, time_budget: Duration::from_secs(600) }
    }
}

impl SearchLimits {
    pub fn validate(&self) -> Result<()> {
        if self.max_internal == 0 || self.max_weight == 0 || self.time_budget.is_zero() {
            return Err(Error::Precondition("search limits must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetReport {
    pub topologies_explored: u64,
    pub topologies_total: Option<u64>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RootVerdict {
    Root(LeafTree),
    NoRoot,
    Inconclusive(BudgetReport),
}

impl RootVerdict {
    pub fn root(&self) -> Option<&LeafTree> {
        match self {
            RootVerdict::Root(t) => Some(t),
            _ => None,
        }
    }

    pub fn into_root(self) -> Option<LeafTree> {
        match self {
            RootVerdict::Root(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_root(&self) -> bool {
        matches!(self, RootVerdict::Root(_))
    }
}

/// Allowed leaf-to-leaf distance window for one pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Window {
    lo: usize,
    hi: usize,
}

/// Exact distance demanded of a pair of leaves, on top of the adjacency
/// constraints. Used to search for roots with a prescribed local shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PinnedDistance {
    pub u: usize,
    pub v: usize,
    pub distance: usize,
}

/// Number of leaf-labeled trees with internal degree >= 3 on `n` leaves
/// (with the `n <= 2` degenerate trees counted as one).
pub fn topology_count(n: usize) -> u64 {
    // T(n+1) = (2n - 3) T(n) + sum over internal nodes; use the recurrence
    // on the number of internal nodes: a(n, m) trees with m internal nodes.
    if n <= 3 {
        return 1;
    }
    let mut a = vec![vec![0u64; n]; n + 1];
    a[3][1] = 1;
    for leaves in 3..n {
        for m in 1..leaves - 1 {
            let c = a[leaves][m];
            if c == 0 {
                continue;
            }
            let edges = (leaves + m - 1) as u64;
            // insert on an edge: new internal node
            a[leaves + 1][m + 1] += c * edges;
            // attach to an existing internal node
            a[leaves + 1][m] += c * m as u64;
        }
    }
    a[n].iter().sum()
}

/// Extra requirements on the roots an oracle search may return.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RootConstraints {
    /// Pairs whose leaf distance must be exactly the given value.
    pub pinned: Vec<PinnedDistance>,
    /// No two leaves may be closer than this.
    pub min_leaf_distance: usize,
}

/// Decides whether `g` has a `k`-leaf root by exhaustive search.
pub fn oracle_root(g: &Graph, k: usize, lim: &SearchLimits) -> Result<RootVerdict> {
    oracle_root_with(g, k, lim, &RootConstraints::default())
}

/// Like [`oracle_root`], but the root must also realize every pinned
/// distance exactly.
pub fn oracle_root_pinned(g: &Graph, k: usize, lim: &SearchLimits, pinned: &[PinnedDistance]) -> Result<RootVerdict> {
    let c = RootConstraints { pinned: pinned.to_vec(), min_leaf_distance: 0 };
    oracle_root_with(g, k, lim, &c)
}

/// Exhaustive search for a `k`-leaf root that also meets `extra`.
pub fn oracle_root_with(g: &Graph, k: usize, lim: &SearchLimits, extra: &RootConstraints) -> Result<RootVerdict> {
    let pinned = extra.pinned.as_slice();
    let n = g.n();
    if n == 0 {
        return Err(Error::Precondition("graph must have at least one vertex".into()));
    }
    if k < 2 {
        return Err(Error::BadK(k));
    }
    lim.validate()?;
    if !g.is_chordal() {
        return Ok(RootVerdict::NoRoot);
    }

    let mut windows = vec![Window { lo: 0, hi: 0 }; n * n];
    for u in 0..n {
        for v in u + 1..n {
            let w = if g.has_edge(u, v) {
                Window { lo: extra.min_leaf_distance.max(1), hi: k }
            } else {
                Window { lo: (k + 1).max(extra.min_leaf_distance), hi: usize::MAX }
            };
            if w.lo > w.hi {
                return Ok(RootVerdict::NoRoot);
            }
            windows[u * n + v] = w;
        }
    }
    for p in pinned {
        let (u, v) = (p.u.min(p.v), p.u.max(p.v));
        if v >= n || u == v {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        let w = &mut windows[u * n + v];
        if p.distance < w.lo || p.distance > w.hi {
            return Ok(RootVerdict::NoRoot);
        }
        *w = Window { lo: p.distance, hi: p.distance };
    }

    match n {
        1 => return Ok(RootVerdict::Root(LeafTree::single(0))),
        2 => {
            // a single path; its length is the distance
            let w = windows[1];
            let len = if w.lo <= 2 && 2 <= w.hi { 2 } else { w.lo };
            let mut t = LeafTree::single(0);
            t.attach_in_place(t.node(0)?, len, 1)?;
            return Ok(RootVerdict::Root(t));
        }
        _ => {}
    }

    // Largest pinned distance bounds the weights a pinned pair needs.
    let needed_cap = pinned.iter().map(|p| p.distance).max().unwrap_or(0).max(k);
    let cap = needed_cap.min(lim.max_weight);
    let mut search = Search {
        n,
        windows,
        cap,
        lim: *lim,
        complete: cap == needed_cap && lim.max_internal >= n - 2,
        started: Instant::now(),
        explored: 0,
        timed_out: false,
        found: None,
    };
    search.run();
    if let Some(t) = search.found {
        return Ok(RootVerdict::Root(t));
    }
    if search.timed_out || !search.complete {
        let reason = if search.timed_out {
            format!("time budget of {}s exhausted", lim.time_budget.as_secs())
        } else {
            "search limits exclude part of the space".to_string()
        };
        return Ok(RootVerdict::Inconclusive(BudgetReport {
            topologies_explored: search.explored,
            topologies_total: Some(topology_count(n)),
            reason,
        }));
    }
    Ok(RootVerdict::NoRoot)
}

/// Tree topology under construction: leaves are nodes `0..n_leaves`,
/// internal nodes come after.
#[derive(Clone)]
struct Topology {
    edges: Vec<(usize, usize)>,
    internal: usize,
}

struct Search {
    n: usize,
    windows: Vec<Window>,
    cap: usize,
    lim: SearchLimits,
    complete: bool,
    started: Instant,
    explored: u64,
    timed_out: bool,
    found: Option<LeafTree>,
}

/// Leaves are nodes `0..n`; internal nodes are `n..`. Inserting leaf `i`
/// while only leaves `0..i` are placed uses node ids that stay fixed.
impl Search {
    fn run(&mut self) {
        let n = self.n;
        let center = n;
        let topo = Topology { edges: vec![(center, 0), (center, 1), (center, 2)], internal: 1 };
        self.grow(topo, 3);
    }

    fn out_of_time(&mut self) -> bool {
        if !self.timed_out && self.started.elapsed() > self.lim.time_budget {
            self.timed_out = true;
        }
        self.timed_out
    }

    fn grow(&mut self, topo: Topology, next_leaf: usize) {
        if self.found.is_some() || self.out_of_time() {
            return;
        }
        if topo.internal > self.lim.max_internal {
            return;
        }
        if !self.partial_feasible(&topo, next_leaf) {
            return;
        }
        if next_leaf == self.n {
            self.explored += 1;
            self.assign_weights(&topo);
            return;
        }
        // attach to an existing internal node
        for j in 0..topo.internal {
            let mut t = topo.clone();
            t.edges.push((self.n + j, next_leaf));
            self.grow(t, next_leaf + 1);
        }
        // or split an edge with a new internal node
        for e in 0..topo.edges.len() {
            let (a, b) = topo.edges[e];
            let mut t = topo.clone();
            let x = self.n + t.internal;
            t.internal += 1;
            t.edges[e] = (a, x);
            t.edges.push((x, b));
            t.edges.push((x, next_leaf));
            self.grow(t, next_leaf + 1);
        }
    }

    /// Cheap necessary test on the placed leaves. Later insertions only
    /// lengthen paths, so a path already longer than a pair's upper bound
    /// can never be repaired.
    fn partial_feasible(&self, topo: &Topology, placed: usize) -> bool {
        let paths = paths_between_leaves(topo, self.n, placed);
        for (u, v, len) in paths {
            let w = self.windows[u * self.n + v];
            if len > w.hi {
                return false;
            }
        }
        true
    }

    fn assign_weights(&mut self, topo: &Topology) {
        let n = self.n;
        let m = topo.edges.len();
        let pair_paths = edge_paths(topo, n);
        // order edges: those on short paths first, so windows close early
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&e| {
            let (a, b) = topo.edges[e];
            let leafy = usize::from(a >= n) + usize::from(b >= n);
            (leafy, a.min(b), e)
        });
        // pairs touching each edge
        let mut pairs_of_edge: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut pair_windows = Vec::new();
        let mut pair_len = Vec::new();
        for (p, (u, v, edges)) in pair_paths.iter().enumerate() {
            for &e in edges {
                pairs_of_edge[e].push(p);
            }
            pair_windows.push(self.windows[u * n + v]);
            pair_len.push(edges.len());
        }
        let mut state = WeightState {
            order,
            pairs_of_edge,
            windows: pair_windows,
            sum: vec![0; pair_len.len()],
            unassigned: pair_len,
            weights: vec![0; m],
            cap: self.cap,
            steps: 0,
        };
        if state.solve(0, &mut || self.started.elapsed() > self.lim.time_budget) {
            self.found = Some(expand(topo, n, &state.weights));
        } else if self.started.elapsed() > self.lim.time_budget {
            self.timed_out = true;
        }
    }
}

struct WeightState {
    order: Vec<usize>,
    pairs_of_edge: Vec<Vec<usize>>,
    windows: Vec<Window>,
    sum: Vec<usize>,
    unassigned: Vec<usize>,
    weights: Vec<usize>,
    cap: usize,
    steps: u64,
}

impl WeightState {
    fn solve(&mut self, i: usize, expired: &mut dyn FnMut() -> bool) -> bool {
        if i == self.order.len() {
            return true;
        }
        self.steps += 1;
        if self.steps.is_multiple_of(4096) && expired() {
            return false;
        }
        let e = self.order[i];
        for w in 1..=self.cap {
            self.weights[e] = w;
            let mut ok = true;
            for &p in &self.pairs_of_edge[e] {
                self.sum[p] += w;
                self.unassigned[p] -= 1;
            }
            for &p in &self.pairs_of_edge[e] {
                let lo_reach = self.sum[p] + self.unassigned[p];
                let hi_reach = self.sum[p] + self.unassigned[p] * self.cap;
                let win = self.windows[p];
                if lo_reach > win.hi || hi_reach < win.lo {
                    ok = false;
                    break;
                }
            }
            // Once the smallest completion overshoots an upper bound, larger
            // weights only make it worse.
            let overshoot =
                self.pairs_of_edge[e].iter().any(|&p| self.sum[p] + self.unassigned[p] > self.windows[p].hi);
            if ok && self.solve(i + 1, expired) {
                return true;
            }
            for &p in &self.pairs_of_edge[e] {
                self.sum[p] -= w;
                self.unassigned[p] += 1;
            }
            if overshoot {
                break;
            }
        }
        self.weights[e] = 0;
        false
    }
}

fn adjacency(topo: &Topology, nodes: usize) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); nodes];
    for (i, &(a, b)) in topo.edges.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    adj
}

/// For each pair of leaves `u < v`, the edge indices on their path.
fn edge_paths(topo: &Topology, n: usize) -> Vec<(usize, usize, Vec<usize>)> {
    let nodes = n + topo.internal;
    let adj = adjacency(topo, nodes);
    let mut out = Vec::new();
    for u in 0..n {
        // DFS from u recording the edge used to reach each node
        let mut via = vec![usize::MAX; nodes];
        let mut parent = vec![usize::MAX; nodes];
        let mut stack = vec![u];
        parent[u] = u;
        while let Some(x) = stack.pop() {
            for &(y, e) in &adj[x] {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    via[y] = e;
                    stack.push(y);
                }
            }
        }
        for v in u + 1..n {
            let mut edges = Vec::new();
            let mut cur = v;
            while cur != u {
                edges.push(via[cur]);
                cur = parent[cur];
            }
            out.push((u, v, edges));
        }
    }
    out
}

/// Path lengths (in topology edges) between the first `placed` leaves.
fn paths_between_leaves(topo: &Topology, n: usize, placed: usize) -> Vec<(usize, usize, usize)> {
    let nodes = n + topo.internal;
    let adj = adjacency(topo, nodes);
    let mut out = Vec::new();
    for u in 0..placed {
        let mut dist = vec![usize::MAX; nodes];
        dist[u] = 0;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for &(y, _) in &adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    stack.push(y);
                }
            }
        }
        out.extend((u + 1..placed).map(|v| (u, v, dist[v])));
    }
    out
}

/// Expands a weighted topology into a unit-edge leaf tree.
fn expand(topo: &Topology, n: usize, weights: &[usize]) -> LeafTree {
    let nodes = n + topo.internal;
    let mut t = LeafTree::blank();
    let ids: Vec<usize> = (0..nodes).map(|_| t.add_node()).collect();
    for (i, &(a, b)) in topo.edges.iter().enumerate() {
        let mut prev = ids[a];
        for _ in 1..weights[i] {
            let x = t.add_node();
            t.link(prev, x);
            prev = x;
        }
        t.link(prev, ids[b]);
    }
    let labels: Vec<(usize, usize)> = (0..n).map(|v| (ids[v], v)).collect();
    let nodes: Vec<usize> = t.nodes().collect();
    let edges: Vec<(usize, usize)> = t.edges().collect();
    LeafTree::from_parts(&nodes, &edges, &labels).expect("expanded topology is a valid leaf tree")
}
