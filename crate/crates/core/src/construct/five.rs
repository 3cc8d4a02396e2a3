//! 5-leaf roots for 4-leaf powers that have a degree-one vertex, and the
//! chain to every larger `k`.
//!
//! The argument behind this is a minimal-counterexample proof; here it runs
//! as a recursion on strictly smaller graphs. Small graphs go to the
//! exhaustive search, and every structural claim the argument relies on is
//! checked at run time: when one fails, or a glued tree does not verify, the
//! graph at hand is handed to the exhaustive search and the event is logged
//! in the trace.

use log::warn;

use super::{
    ensure_root, expand_similar, join_far, lift_plus_two, normalize_t0_gadget, via_reduction, ConstructionTrace,
    Normalized, Rule,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{oracle_root, RootVerdict, SearchLimits};
use crate::recognize::{recognize_4, reduce_similar, CalHCertificate};
use crate::tree::{verify_root, LeafTree, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiveConfig {
    /// Graphs with at most this many vertices are solved by exhaustive search.
    pub base: usize,
    pub limits: SearchLimits,
}

impl Default for FiveConfig {
    fn default() -> Self {
        FiveConfig { base: 6, limits: SearchLimits::default() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiveOutcome {
    pub tree: LeafTree,
    pub trace: ConstructionTrace,
}

impl FiveOutcome {
    /// How many times a structural claim failed and the search took over.
    pub fn fallbacks(&self) -> usize {
        self.trace.count(Rule::OracleFallback)
    }
}

fn check_input(g: &Graph) -> Result<()> {
    if !recognize_4(g).is_member() {
        return Err(Error::NotLeafPower(4));
    }
    if g.leaves().is_empty() {
        return Err(Error::NoLeaf);
    }
    Ok(())
}

pub fn four_to_five(g: &Graph) -> Result<LeafTree> {
    Ok(four_to_five_with(g, &FiveConfig::default())?.tree)
}

pub fn four_to_five_with(g: &Graph, cfg: &FiveConfig) -> Result<FiveOutcome> {
    cfg.limits.validate()?;
    check_input(g)?;
    let mut b = Builder { cfg, trace: ConstructionTrace::default() };
    let labels: Vec<usize> = g.vertices().collect();
    let tree = b.solve(g, &labels)?;
    ensure_root(g, &tree, 5, "4-to-5 construction")?;
    Ok(FiveOutcome { tree, trace: b.trace })
}

/// A `k`-leaf root for `k >= 4`: odd `k` lifts the 5-root, even `k` lifts a
/// 4-root.
pub fn four_to_k(g: &Graph, k: usize) -> Result<LeafTree> {
    Ok(four_to_k_with(g, k, &FiveConfig::default())?.tree)
}

pub fn four_to_k_with(g: &Graph, k: usize, cfg: &FiveConfig) -> Result<FiveOutcome> {
    if k < 4 {
        return Err(Error::BadK(k));
    }
    check_input(g)?;
    let (mut out, start) = if k % 2 == 1 {
        (four_to_five_with(g, cfg)?, 5)
    } else {
        let tree = four_root(g, &cfg.limits)?;
        (FiveOutcome { tree, trace: ConstructionTrace::default() }, 4)
    };
    for _ in 0..(k - start) / 2 {
        out.tree = lift_plus_two(&out.tree);
    }
    ensure_root(g, &out.tree, k, "lifted root")?;
    Ok(out)
}

/// A 4-leaf root found by exhaustive search on each component with its
/// similar vertices removed.
pub fn four_root(g: &Graph, limits: &SearchLimits) -> Result<LeafTree> {
    let mut parts = Vec::new();
    for comp in g.connected_components() {
        let (h, map) = g.induced_subgraph(&comp)?;
        let (t, _) = via_reduction(&h, 4, |r| searched_root(r, 4, limits))?;
        parts.push(t.relabeled(&map)?);
    }
    let t = join_far(parts, 4)?;
    ensure_root(g, &t, 4, "4-root")?;
    Ok(t)
}

fn searched_root(g: &Graph, k: usize, limits: &SearchLimits) -> Result<LeafTree> {
    match oracle_root(g, k, limits)? {
        RootVerdict::Root(t) => Ok(t),
        RootVerdict::NoRoot => Err(Error::NotLeafPower(k)),
        RootVerdict::Inconclusive(r) => Err(Error::Inconclusive(format!(
            "search for a {k}-leaf root on {} vertices stopped after {} topologies: {}",
            g.n(),
            r.topologies_explored,
            r.reason
        ))),
    }
}

/// Hangs `label` on a path of `len` edges from the neighbor of `anchor`'s
/// leaf, creating that neighbor when `anchor` is the whole tree.
fn hang_below_neighbor(t: &mut LeafTree, anchor: usize, len: usize, label: usize) -> Result<()> {
    let at = match t.leaf_neighbor(anchor) {
        Ok(at) => at,
        Err(_) => {
            let at = t.add_node();
            t.link(t.node(anchor)?, at);
            at
        }
    };
    t.attach_in_place(at, len, label)?;
    Ok(())
}

/// Whether a new leaf `v` hung `len` edges below `at` sees exactly its
/// neighbors in `g` among the leaves already in `t`.
fn fits(t: &LeafTree, g: &Graph, v: usize, at: NodeId, len: usize) -> bool {
    t.distances_from(at).into_iter().all(|(x, d)| (d + len <= 5) == g.has_edge(v, x))
}

struct Builder<'a> {
    cfg: &'a FiveConfig,
    trace: ConstructionTrace,
}

impl Builder<'_> {
    /// 5-root of a 4-leaf power with a leaf, in `g`'s own labels. `labels`
    /// maps `g`'s vertices to the input graph's, for the trace only.
    fn solve(&mut self, g: &Graph, labels: &[usize]) -> Result<LeafTree> {
        if g.n() <= self.cfg.base {
            self.trace.push(Rule::Base, labels.to_vec(), "exhaustive search");
            return searched_root(g, 5, &self.cfg.limits);
        }
        let comps = g.connected_components();
        if comps.len() > 1 {
            self.trace.push(Rule::Components, labels.to_vec(), format!("{} components joined far apart", comps.len()));
            let mut parts = Vec::new();
            for comp in comps {
                let (h, map) = g.induced_subgraph(&comp)?;
                parts.push(self.sub(&h, &map, labels)?.relabeled(&map)?);
            }
            return join_far(parts, 5);
        }
        if g.has_similar_pair() {
            let red = reduce_similar(g);
            let steps: Vec<String> = red.steps.iter().map(|&(k, d)| format!("{}~{}", labels[k], labels[d])).collect();
            self.trace.push(Rule::SimilarReduction, labels.to_vec(), format!("removed {}", steps.join(" ")));
            let t = self.sub(&red.reduced, &red.kept, labels)?;
            return expand_similar(&t, &red, 5);
        }
        match self.step(g, labels) {
            Ok(t) => match verify_root(g, &t, 5) {
                Ok(None) => Ok(t),
                Ok(Some(v)) => {
                    let why = format!(
                        "glued tree does not verify: {} and {} at distance {} (adjacent: {})",
                        labels[v.u], labels[v.v], v.distance, v.adjacent
                    );
                    self.fallback(g, labels, why)
                }
                Err(e) => self.fallback(g, labels, format!("glued tree does not verify: {e}")),
            },
            Err(e @ Error::Inconclusive(_)) => Err(e),
            Err(e) => self.fallback(g, labels, e.to_string()),
        }
    }

    /// Solves the subgraph `h` whose vertex `i` is `map[i]` in the caller's
    /// labels. Subgraphs without a leaf are out of the recursion's reach.
    fn sub(&mut self, h: &Graph, map: &[usize], labels: &[usize]) -> Result<LeafTree> {
        let sub_labels: Vec<usize> = map.iter().map(|&v| labels[v]).collect();
        if !h.leaves().is_empty() {
            return self.solve(h, &sub_labels);
        }
        if h.is_complete() {
            let all: Vec<usize> = h.vertices().collect();
            return LeafTree::star(&all);
        }
        self.fallback(h, &sub_labels, "subgraph without a leaf".into())
    }

    fn fallback(&mut self, g: &Graph, labels: &[usize], reason: String) -> Result<LeafTree> {
        warn!("exhaustive search on {labels:?}: {reason}");
        self.trace.push(Rule::OracleFallback, labels.to_vec(), reason);
        searched_root(g, 5, &self.cfg.limits)
    }

    fn normalize(&mut self, h: &Graph, cert: &CalHCertificate, t: &LeafTree, labels: &[usize]) -> Result<Normalized> {
        let out = normalize_t0_gadget(h, cert, t, &self.cfg.limits)?;
        let names: Vec<usize> = labels.to_vec();
        match &out.fallback {
            Some(reason) => self.trace.push(Rule::OracleFallback, names, reason.clone()),
            None => self.trace.push(Rule::Normalize, names, "gadget surgery"),
        }
        Ok(out)
    }

    /// One step of the case analysis on a connected graph without similar
    /// vertices.
    fn step(&mut self, g: &Graph, labels: &[usize]) -> Result<LeafTree> {
        let u = g.leaves()[0];
        let v1 = g.neighbors(u)[0];
        let (gu, keep) = g.without(&[u]);
        let pairs = gu.similar_pairs();
        if pairs.is_empty() {
            self.trace.push(
                Rule::LeafExtension,
                labels.to_vec(),
                format!("{} four below {}'s neighbor", labels[u], labels[v1]),
            );
            let mut t = self.sub(&gu, &keep, labels)?.relabeled(&keep)?;
            hang_below_neighbor(&mut t, v1, 4, u)?;
            return Ok(t);
        }
        let v1_in_gu = keep.iter().position(|&v| v == v1).unwrap();
        let [(x, y)] = pairs.as_slice() else {
            return Err(Error::Construction(format!("{} similar pairs after removing the leaf", pairs.len())));
        };
        let v2 = match (*x == v1_in_gu, *y == v1_in_gu) {
            (true, _) => keep[*y],
            (_, true) => keep[*x],
            _ => return Err(Error::Construction("similar pair avoids the leaf's neighbor".into())),
        };
        let n: Vec<usize> = g.neighbors(v1).iter().copied().filter(|&w| w != u && w != v2).collect();
        let (gn, nmap) = g.induced_subgraph(&n)?;
        let parts: Vec<Vec<usize>> =
            gn.connected_components().into_iter().map(|c| c.into_iter().map(|i| nmap[i]).collect()).collect();
        if !parts.iter().all(|p| g.is_clique(p)) {
            return Err(Error::Construction("neighborhood is not a union of cliques".into()));
        }
        match parts.len() {
            0 | 1 => self.clique_case(g, labels, [u, v1, v2], &n),
            2 => self.split_case(g, labels, [u, v1, v2], [&parts[0], &parts[1]]),
            k => Err(Error::Construction(format!("neighborhood splits into {k} cliques"))),
        }
    }

    fn clique_case(&mut self, g: &Graph, labels: &[usize], [u, v1, v2]: [usize; 3], n: &[usize]) -> Result<LeafTree> {
        let (h, keep) = g.without(&[v2]);
        if !h.is_connected() || h.has_similar_pair() {
            warn!("removing {} leaves a disconnected graph or similar vertices", labels[v2]);
        }
        let mut t = self.sub(&h, &keep, labels)?.relabeled(&keep)?;
        // u hangs four below v1's neighbor, so it stays out of v2's reach
        t.delete_in_place(u)?;
        hang_below_neighbor(&mut t, v1, 4, u)?;
        let mut far = None;
        for &w in n {
            let d = t.leaf_distance(v1, w)?;
            if far.is_none_or(|(best, _)| d > best) {
                far = Some((d, w));
            }
        }
        let at = match far {
            Some((d @ (4 | 5), w)) => t.path(t.node(v1)?, t.node(w)?)?[d - 2],
            _ => t.leaf_neighbor(v1)?,
        };
        let dist = far.map_or(0, |(d, _)| d);
        let mut note =
            format!("{} two below the node {} from {} (max distance {dist})", labels[v2], dist.max(3) - 2, labels[v1]);
        let (at, len) = if fits(&t, g, v2, at, 2) {
            (at, 2)
        } else {
            // the placement above can land v2 within reach of a non-neighbor
            let (at, len) = (t.internal_nodes())
                .flat_map(|p| (1..=4).map(move |len| (p, len)))
                .find(|&(p, len)| fits(&t, g, v2, p, len))
                .ok_or_else(|| Error::Construction(format!("no place for {} in the root of G - v2", labels[v2])))?;
            note = format!("{} {len} below node {at}: two below the node {} does not fit", labels[v2], dist.max(3) - 2);
            (at, len)
        };
        self.trace.push(Rule::CliqueNeighborhood, labels.to_vec(), note);
        t.attach_in_place(at, len, v2)?;
        Ok(t)
    }

    fn split_case(
        &mut self,
        g: &Graph,
        labels: &[usize],
        [u, v1, v2]: [usize; 3],
        halves: [&Vec<usize>; 2],
    ) -> Result<LeafTree> {
        let (rest, rmap) = g.without(&[u, v1, v2]);
        let comps: Vec<Vec<usize>> =
            rest.connected_components().into_iter().map(|c| c.into_iter().map(|i| rmap[i]).collect()).collect();
        if comps.len() != 2 {
            return Err(Error::Construction(format!("{} components besides u, v1, v2", comps.len())));
        }
        let home = |part: &Vec<usize>| comps.iter().position(|c| c.contains(&part[0])).unwrap();
        let (i0, i1) = (home(halves[0]), home(halves[1]));
        if i0 == i1 || !halves.iter().zip([i0, i1]).all(|(p, i)| p.iter().all(|w| comps[i].contains(w))) {
            return Err(Error::Construction("clique halves share a component".into()));
        }
        let sides = [(&comps[i0], halves[0]), (&comps[i1], halves[1])];
        match (sides[0].0.len(), sides[1].0.len()) {
            (1, _) => self.one_gadget(g, labels, [u, v1, v2], sides[0].0[0], sides[1].1),
            (_, 1) => self.one_gadget(g, labels, [u, v1, v2], sides[1].0[0], sides[0].1),
            _ => self.two_gadgets(g, labels, [u, v1, v2], sides),
        }
    }

    /// Roots of `G - U2 - v2` and `G - U1 - v1 + u v2`, normalized, with the
    /// second copy of `u` removed, `b1 b2` added and `a1 b1`, `a2 b2`
    /// contracted.
    fn two_gadgets(
        &mut self,
        g: &Graph,
        labels: &[usize],
        [u, v1, v2]: [usize; 3],
        [(u1, n1), (u2, n2)]: [(&Vec<usize>, &Vec<usize>); 2],
    ) -> Result<LeafTree> {
        self.trace.push(Rule::TwoGadgets, labels.to_vec(), "glue along b1 b2, contract a1 b1 and a2 b2");
        let drop1: Vec<usize> = u2.iter().copied().chain([v2]).collect();
        let drop2: Vec<usize> = u1.iter().copied().chain([v1]).collect();
        let (h1, k1) = g.without(&drop1);
        let (h2, k2) = g.without(&drop2);
        let at = |k: &[usize], v: usize| k.iter().position(|&x| x == v).unwrap();
        let h2 = h2.with_edge(at(&k2, u), at(&k2, v2))?;
        let cert = |k: &[usize], c: usize, ns: &[usize]| {
            let mut clique = vec![at(k, c)];
            clique.extend(ns.iter().map(|&w| at(k, w)));
            clique[1..].sort_unstable();
            CalHCertificate { clique, leaf: at(k, u) }
        };
        let (c1, c2) = (cert(&k1, v1, n1), cert(&k2, v2, n2));
        let t1 = self.sub(&h1, &k1, labels)?;
        let t2 = self.sub(&h2, &k2, labels)?;
        let l1: Vec<usize> = k1.iter().map(|&v| labels[v]).collect();
        let l2: Vec<usize> = k2.iter().map(|&v| labels[v]).collect();
        let f1 = self.normalize(&h1, &c1, &t1, &l1)?;
        let f2 = self.normalize(&h2, &c2, &t2, &l2)?;
        let mut t = f1.tree.relabeled(&k1)?;
        let mut t2 = f2.tree.relabeled(&k2)?;
        t2.delete_in_place(u)?;
        let off = t.absorb(&t2)?;
        let (a1, b1, a2, b2) = (f1.gadget.a, f1.gadget.b, f2.gadget.a + off, f2.gadget.b + off);
        t.link(b1, b2);
        t.contract_in_place(a1, b1)?;
        t.contract_in_place(a2, b2)?;
        t.check()?;
        Ok(t)
    }

    /// Root of `G - w1 - v2`, normalized, with `v2` two below `b2` and `w1`
    /// two below `a2`.
    fn one_gadget(
        &mut self,
        g: &Graph,
        labels: &[usize],
        [u, v1, v2]: [usize; 3],
        w1: usize,
        n2: &[usize],
    ) -> Result<LeafTree> {
        self.trace.push(
            Rule::OneGadget,
            labels.to_vec(),
            format!("{} two below b2, {} two below a2", labels[v2], labels[w1]),
        );
        let (h, keep) = g.without(&[w1, v2]);
        let at = |v: usize| keep.iter().position(|&x| x == v).unwrap();
        let mut clique = vec![at(v1)];
        clique.extend(n2.iter().map(|&w| at(w)));
        clique[1..].sort_unstable();
        let cert = CalHCertificate { clique, leaf: at(u) };
        let t = self.sub(&h, &keep, labels)?;
        let names: Vec<usize> = keep.iter().map(|&v| labels[v]).collect();
        let f = self.normalize(&h, &cert, &t, &names)?;
        let mut t = f.tree.relabeled(&keep)?;
        t.attach_in_place(f.gadget.b, 2, v2)?;
        t.attach_in_place(f.gadget.a, 2, w1)?;
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::PatternSet;
    use crate::tree::is_root;

    fn small_base() -> FiveConfig {
        FiveConfig { base: 2, ..FiveConfig::default() }
    }

    #[test]
    fn star_and_bull() {
        let bull = PatternSet::three_leaf().get("bull").unwrap().graph.clone();
        for g in [Graph::star(3), bull] {
            for cfg in [FiveConfig::default(), small_base()] {
                let out = four_to_five_with(&g, &cfg).unwrap();
                assert!(is_root(&g, &out.tree, 5));
            }
        }
    }

    #[test]
    fn rejects() {
        assert_eq!(four_to_five(&Graph::cycle(4)), Err(Error::NotLeafPower(4)));
        assert_eq!(four_to_five(&Graph::complete(3)), Err(Error::NoLeaf));
        assert_eq!(four_to_k(&Graph::path(3), 3), Err(Error::BadK(3)));
    }

    #[test]
    fn chain_to_k() {
        let bull = PatternSet::three_leaf().get("bull").unwrap().graph.clone();
        assert!(is_root(&bull, &four_to_k(&bull, 6).unwrap(), 6));
        assert!(is_root(&Graph::star(3), &four_to_k(&Graph::star(3), 4).unwrap(), 4));
        assert!(is_root(&Graph::path(3), &four_to_k(&Graph::path(3), 7).unwrap(), 7));
    }

    #[test]
    fn recursion_on_longer_paths() {
        for n in 3..=9 {
            let g = Graph::path(n);
            let out = four_to_five_with(&g, &small_base()).unwrap();
            assert!(is_root(&g, &out.tree, 5), "P{n}");
        }
    }

    #[test]
    fn clique_case_places_v2_away_from_non_neighbors() {
        // hanging v2 two below the third node towards the far clique vertex
        // puts it at distance 5 from a non-neighbor of that vertex's branch
        let edges = [(0, 5), (1, 4), (2, 5), (2, 6), (3, 4), (3, 6), (4, 6), (5, 6)];
        let g = Graph::from_edges(7, &edges).unwrap();
        let out = four_to_five_with(&g, &small_base()).unwrap();
        assert!(is_root(&g, &out.tree, 5));
        assert_eq!(out.fallbacks(), 0, "{:?}", out.trace);
        assert!(out.trace.entries.iter().any(|e| e.surgery.contains("does not fit")));
    }
}
