//! Membership tests for 2-, 3- and 4-leaf powers, similar-vertex reduction,
//! and certificates for the clique-with-pendant class used by the 4-to-5
//! construction.

use crate::error::{Error, Result};
use crate::graph::{Chordality, Graph};
use crate::patterns::{contains_any, PatternHit, PatternSet};

/// Result of deleting similar vertices until none remain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarReduction {
    pub reduced: Graph,
    /// `(kept, deleted)` in original labels, in deletion order.
    pub steps: Vec<(usize, usize)>,
    /// `kept[r]` is the original label of reduced vertex `r`.
    pub kept: Vec<usize>,
    original_n: usize,
}

impl SimilarReduction {
    pub fn original_n(&self) -> usize {
        self.original_n
    }

    /// Reduced label of an original vertex, if it survived.
    pub fn reduced_label(&self, original: usize) -> Option<usize> {
        self.kept.binary_search(&original).ok()
    }

    /// Replays the deletions on `g` and checks every recorded invariant.
    pub fn check(&self, g: &Graph) -> Result<()> {
        let mut alive: Vec<usize> = g.vertices().collect();
        for &(kept, deleted) in &self.steps {
            let (cur, map) = g.induced_subgraph(&alive)?;
            let pos = |v: usize| map.binary_search(&v).map_err(|_| Error::Precondition(format!("{v} already deleted")));
            if !cur.are_similar(pos(kept)?, pos(deleted)?) {
                return Err(Error::Precondition(format!("{kept} and {deleted} are not similar")));
            }
            alive.retain(|&v| v != deleted);
        }
        let (end, _) = g.induced_subgraph(&alive)?;
        if alive != self.kept || end != self.reduced || end.has_similar_pair() {
            return Err(Error::Precondition("replay does not reproduce the reduced graph".into()));
        }
        Ok(())
    }
}

/// Repeatedly deletes the larger vertex of the lexicographically least
/// similar pair.
pub fn reduce_similar(g: &Graph) -> SimilarReduction {
    let mut alive: Vec<usize> = g.vertices().collect();
    let mut current = g.clone();
    let mut steps = Vec::new();
    while let Some(&(a, b)) = current.similar_pairs().first() {
        steps.push((alive[a], alive[b]));
        alive.remove(b);
        current = g.induced_unchecked(&alive);
    }
    SimilarReduction { reduced: current, steps, kept: alive, original_n: g.n() }
}

/// Why a graph is not in a class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `a - b - c` with `a`, `c` nonadjacent.
    InducedP3([usize; 3]),
    ChordlessCycle(Vec<usize>),
    /// A forbidden pattern, embedded in the input graph's labels.
    Pattern(PatternHit),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Member,
    NotMember(Witness),
}

impl Verdict {
    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::Member)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Member => None,
            Verdict::NotMember(w) => Some(w),
        }
    }
}

/// 2-leaf powers are exactly the disjoint unions of cliques.
pub fn recognize_2(g: &Graph) -> Verdict {
    match g.find_induced_p3() {
        None => Verdict::Member,
        Some(p) => Verdict::NotMember(Witness::InducedP3(p)),
    }
}

/// 3-leaf powers are exactly the chordal graphs without bull, dart or gem.
pub fn recognize_3(g: &Graph) -> Verdict {
    recognize_3_with(g, &PatternSet::three_leaf())
}

pub fn recognize_3_with(g: &Graph, patterns: &PatternSet) -> Verdict {
    if let Chordality::ChordlessCycle(c) = g.chordality() {
        return Verdict::NotMember(Witness::ChordlessCycle(c));
    }
    match contains_any(g, patterns) {
        None => Verdict::Member,
        Some(hit) => Verdict::NotMember(Witness::Pattern(hit)),
    }
}

/// After deleting similar vertices, 4-leaf powers are exactly the chordal
/// graphs avoiding the patterns G1..G8.
pub fn recognize_4(g: &Graph) -> Verdict {
    recognize_4_with(g, &PatternSet::figure1())
}

pub fn recognize_4_with(g: &Graph, patterns: &PatternSet) -> Verdict {
    let red = reduce_similar(g);
    if let Chordality::ChordlessCycle(c) = red.reduced.chordality() {
        return Verdict::NotMember(Witness::ChordlessCycle(c.into_iter().map(|v| red.kept[v]).collect()));
    }
    match contains_any(&red.reduced, patterns) {
        None => Verdict::Member,
        Some(hit) => Verdict::NotMember(Witness::Pattern(PatternHit {
            name: hit.name,
            embedding: hit.embedding.into_iter().map(|v| red.kept[v]).collect(),
        })),
    }
}

/// A clique `c1..ct` (t >= 2) with a degree-one vertex `u` hanging off `c1`
/// such that every other vertex sees at most one clique vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CalHCertificate {
    /// `clique[0]` is `c1`; the rest ascending.
    pub clique: Vec<usize>,
    pub leaf: usize,
}

impl CalHCertificate {
    pub fn c1(&self) -> usize {
        self.clique[0]
    }

    pub fn check(&self, g: &Graph) -> Result<()> {
        let bad = |msg: &str| Err(Error::Precondition(format!("invalid certificate {self:?}: {msg}")));
        if self.clique.len() < 2 {
            return bad("clique needs at least two vertices");
        }
        if self.clique.iter().chain([&self.leaf]).any(|&v| v >= g.n()) {
            return bad("vertex out of range");
        }
        if !g.is_clique(&self.clique) {
            return bad("not a clique");
        }
        if g.neighbors(self.leaf) != [self.c1()] {
            return bad("leaf must have c1 as its only neighbor");
        }
        for v in g.vertices() {
            if v == self.leaf || self.clique.contains(&v) {
                continue;
            }
            if self.clique.iter().filter(|&&c| g.has_edge(v, c)).count() > 1 {
                return bad("an outside vertex sees two clique vertices");
            }
        }
        Ok(())
    }
}

/// Lexicographically least certificate (by leaf, then clique), if any.
pub fn is_calh_member(g: &Graph) -> Option<CalHCertificate> {
    for u in g.leaves() {
        let c1 = g.neighbors(u)[0];
        let pool: Vec<usize> = g.neighbors(c1).iter().copied().filter(|&v| v != u).collect();
        let mut rest = Vec::new();
        if let Some(cert) = grow_clique(g, u, c1, &pool, 0, &mut rest) {
            return Some(cert);
        }
    }
    None
}

/// Depth-first over cliques `{c1} + rest` in lexicographic order of `rest`.
fn grow_clique(
    g: &Graph,
    u: usize,
    c1: usize,
    pool: &[usize],
    from: usize,
    rest: &mut Vec<usize>,
) -> Option<CalHCertificate> {
    for i in from..pool.len() {
        let v = pool[i];
        if !rest.iter().all(|&w| g.has_edge(v, w)) {
            continue;
        }
        rest.push(v);
        let mut clique = vec![c1];
        clique.extend(rest.iter().copied());
        let cert = CalHCertificate { clique, leaf: u };
        if cert.check(g).is_ok() {
            return Some(cert);
        }
        if let Some(found) = grow_clique(g, u, c1, pool, i + 1, rest) {
            return Some(found);
        }
        rest.pop();
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bull() -> Graph {
        PatternSet::three_leaf().get("bull").unwrap().graph.clone()
    }

    #[test]
    fn reduce_examples() {
        let r = reduce_similar(&Graph::complete(3));
        assert_eq!(r.reduced, Graph::empty(1));
        assert_eq!(r.steps, vec![(0, 1), (0, 2)]);
        assert_eq!(r.kept, vec![0]);
        let p3 = reduce_similar(&Graph::path(3));
        assert_eq!(p3.reduced, Graph::path(3));
        assert!(p3.steps.is_empty());
        let k2 = reduce_similar(&Graph::complete(2));
        assert_eq!((k2.reduced.n(), k2.steps.len()), (1, 1));
        for g in [Graph::complete(3), Graph::complete(2), bull()] {
            reduce_similar(&g).check(&g).unwrap();
        }
    }

    #[test]
    fn recognize_2_examples() {
        assert!(recognize_2(&Graph::complete(3).disjoint_union(&Graph::complete(2))).is_member());
        assert_eq!(recognize_2(&Graph::path(3)), Verdict::NotMember(Witness::InducedP3([0, 1, 2])));
        assert!(recognize_2(&Graph::empty(1)).is_member());
    }

    #[test]
    fn recognize_3_examples() {
        match recognize_3(&bull()) {
            Verdict::NotMember(Witness::Pattern(hit)) => assert_eq!(hit.name, "bull"),
            other => panic!("{other:?}"),
        }
        assert!(recognize_3(&Graph::path(4)).is_member());
        assert!(matches!(recognize_3(&Graph::cycle(4)), Verdict::NotMember(Witness::ChordlessCycle(_))));
    }

    #[test]
    fn recognize_4_examples() {
        assert!(matches!(recognize_4(&Graph::cycle(4)), Verdict::NotMember(Witness::ChordlessCycle(_))));
        assert!(recognize_4(&bull()).is_member());
        let fig = PatternSet::figure1();
        for name in ["G1", "G2", "G3"] {
            match recognize_4(&fig.get(name).unwrap().graph) {
                Verdict::NotMember(Witness::Pattern(hit)) => assert_eq!(hit.name, name),
                other => panic!("{name}: {other:?}"),
            }
        }
        // the remaining patterns contain similar vertices and reduce away
        assert!(recognize_4(&fig.get("G8").unwrap().graph).is_member());
    }

    #[test]
    fn witness_uses_original_labels() {
        // C5 with vertex 0 doubled by a similar vertex 5
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (5, 0), (5, 1), (5, 4)]).unwrap();
        let Verdict::NotMember(Witness::ChordlessCycle(c)) = recognize_4(&g) else { panic!() };
        let (sub, _) = g.induced_subgraph(&c).unwrap();
        assert!(sub.vertices().all(|v| sub.degree(v) == 2));
    }

    #[test]
    fn calh_examples() {
        let tri_pendant = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap();
        let cert = is_calh_member(&tri_pendant).unwrap();
        assert_eq!(cert, CalHCertificate { clique: vec![0, 1, 2], leaf: 3 });
        let p3 = is_calh_member(&Graph::path(3)).unwrap();
        assert_eq!(p3, CalHCertificate { clique: vec![1, 2], leaf: 0 });
        assert_eq!(is_calh_member(&Graph::complete(3)), None);
        cert.check(&tri_pendant).unwrap();
        let bad = CalHCertificate { clique: vec![0, 1], leaf: 2 };
        assert!(bad.check(&tri_pendant).is_err());
    }
}
