//! Canonical forms and isomorphism-free enumeration of small graphs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_CANONICAL_N: usize = 10;
pub const MAX_ENUMERATE_N: usize = 8;

/// Byte encoding that is equal for two graphs iff they are isomorphic.
///
/// The first byte is `n`; the rest is the upper triangle of the adjacency
/// matrix, column by column, packed into bits. The encoding is the
/// lexicographic minimum over all orderings compatible with the stable
/// color-refinement partition, which is itself isomorphism-invariant.
pub fn canonical_form(g: &Graph) -> Result<Vec<u8>> {
    if g.n() > MAX_CANONICAL_N {
        return Err(Error::TooLarge { n: g.n(), limit: MAX_CANONICAL_N });
    }
    let (bits, _) = canonical_bits(g);
    Ok(pack(g.n(), &bits))
}

/// Relabels `g` into its canonical labeling.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    if g.n() > MAX_CANONICAL_N {
        return Err(Error::TooLarge { n: g.n(), limit: MAX_CANONICAL_N });
    }
    let (_, order) = canonical_bits(g);
    let mut perm = vec![0; g.n()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok(g.permuted(&perm))
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && canonical_form(a).ok() == canonical_form(b).ok()
}

fn pack(n: usize, bits: &[bool]) -> Vec<u8> {
    let mut out = vec![n as u8];
    for chunk in bits.chunks(8) {
        let mut byte = 0u8;
        for (i, &b) in chunk.iter().enumerate() {
            if b {
                byte |= 0x80 >> i;
            }
        }
        out.push(byte);
    }
    out
}

/// Stable colors from iterated neighborhood refinement, starting at degree.
fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut ranks: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
        for s in &sigs {
            ranks.insert(s, 0);
        }
        for (i, r) in ranks.values_mut().enumerate() {
            *r = i;
        }
        let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
        let classes = |c: &[usize]| {
            let mut c = c.to_vec();
            c.sort_unstable();
            c.dedup();
            c.len()
        };
        if classes(&next) == classes(&color) || n == 0 {
            return next;
        }
        color = next;
    }
}

struct Search<'a> {
    g: &'a Graph,
    cell_of_pos: Vec<usize>,
    members: Vec<Vec<usize>>,
    used: Vec<bool>,
    order: Vec<usize>,
    bits: Vec<bool>,
    best: Option<(Vec<bool>, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize) {
        if pos == self.g.n() {
            if self.best.as_ref().is_none_or(|(b, _)| self.bits < *b) {
                self.best = Some((self.bits.clone(), self.order.clone()));
            }
            return;
        }
        let cell = self.cell_of_pos[pos];
        for i in 0..self.members[cell].len() {
            let v = self.members[cell][i];
            if self.used[v] {
                continue;
            }
            let start = self.bits.len();
            for &w in &self.order {
                self.bits.push(self.g.has_edge(w, v));
            }
            // prune on the prefix
            let worse = self.best.as_ref().is_some_and(|(b, _)| self.bits[..] > b[..self.bits.len()]);
            if !worse {
                self.used[v] = true;
                self.order.push(v);
                self.run(pos + 1);
                self.order.pop();
                self.used[v] = false;
            }
            self.bits.truncate(start);
        }
    }
}

fn canonical_bits(g: &Graph) -> (Vec<bool>, Vec<usize>) {
    let colors = refine_colors(g);
    let ncolors = colors.iter().max().map_or(0, |m| m + 1);
    let mut members = vec![Vec::new(); ncolors];
    for v in g.vertices() {
        members[colors[v]].push(v);
    }
    let cell_of_pos: Vec<usize> =
        members.iter().enumerate().flat_map(|(c, m)| std::iter::repeat_n(c, m.len())).collect();
    let mut s =
        Search { g, cell_of_pos, members, used: vec![false; g.n()], order: Vec::new(), bits: Vec::new(), best: None };
    s.run(0);
    s.best.unwrap_or_default()
}

/// One representative per isomorphism class on `n` vertices, in its
/// canonical labeling, ordered by canonical form.
pub fn enumerate_graphs(n: usize, connected_only: bool) -> Result<Vec<Graph>> {
    if !(1..=MAX_ENUMERATE_N).contains(&n) {
        return Err(Error::Precondition(format!("enumeration needs 1 <= n <= {MAX_ENUMERATE_N}")));
    }
    let mut level: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
    level.insert(canonical_form(&Graph::empty(1))?, Graph::empty(1));
    for m in 2..=n {
        let mut next = BTreeMap::new();
        for g in level.values() {
            for mask in 0u32..1 << (m - 1) {
                let mut edges: Vec<(usize, usize)> = g.edges().collect();
                edges.extend((0..m - 1).filter(|&v| mask >> v & 1 == 1).map(|v| (v, m - 1)));
                let h = Graph::from_edge_iter(m, edges);
                let (bits, order) = canonical_bits(&h);
                next.entry(pack(m, &bits)).or_insert_with(|| {
                    let mut perm = vec![0; m];
                    for (pos, &v) in order.iter().enumerate() {
                        perm[v] = pos;
                    }
                    h.permuted(&perm)
                });
            }
        }
        level = next;
    }
    Ok(level.into_values().filter(|g| !connected_only || g.is_connected()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bull() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn canonical_examples() {
        let p3 = Graph::path(3);
        let relabeled = p3.permuted(&[1, 0, 2]);
        assert_eq!(canonical_form(&p3).unwrap(), canonical_form(&relabeled).unwrap());
        assert_ne!(canonical_form(&p3).unwrap(), canonical_form(&Graph::complete(3)).unwrap());
        let b = bull();
        for perm in [[4, 3, 2, 1, 0], [2, 0, 4, 1, 3], [1, 2, 3, 4, 0]] {
            assert_eq!(canonical_form(&b).unwrap(), canonical_form(&b.permuted(&perm)).unwrap());
        }
        assert!(matches!(canonical_form(&Graph::empty(11)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn enumeration_counts() {
        // all graphs, then connected graphs, n = 1..6
        let all = [1, 2, 4, 11, 34, 156];
        let connected = [1, 1, 2, 6, 21, 112];
        for n in 1..=6 {
            assert_eq!(enumerate_graphs(n, false).unwrap().len(), all[n - 1], "n={n}");
            assert_eq!(enumerate_graphs(n, true).unwrap().len(), connected[n - 1], "n={n}");
        }
        assert!(enumerate_graphs(0, false).is_err());
        assert!(enumerate_graphs(9, false).is_err());
    }

    #[test]
    fn connected_four_vertex_graphs_by_brute_force() {
        // dedup all 64 labeled graphs on 4 vertices by trying every permutation
        let perms: Vec<Vec<usize>> = {
            let mut out = Vec::new();
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        for d in 0..4 {
                            let p = vec![a, b, c, d];
                            let mut s = p.clone();
                            s.sort();
                            s.dedup();
                            if s.len() == 4 {
                                out.push(p);
                            }
                        }
                    }
                }
            }
            out
        };
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut reps: Vec<Graph> = Vec::new();
        for mask in 0..64u32 {
            let e: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            let g = Graph::from_edges(4, &e).unwrap();
            if !g.is_connected() {
                continue;
            }
            if !reps.iter().any(|r| perms.iter().any(|p| &g.permuted(p) == r)) {
                reps.push(g);
            }
        }
        assert_eq!(reps.len(), 6);
        assert_eq!(enumerate_graphs(4, true).unwrap().len(), reps.len());
    }
}
