//! Reshaping a 5-leaf root of a clique-with-pendant graph so that it
//! contains the fixed gadget: `c1 - a - b - hub`, every other clique vertex
//! two edges below `hub`, and the leaf `u` four edges below `a`.

use log::warn;

use super::ensure_root;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{oracle_root_pinned, PinnedDistance, RootVerdict, SearchLimits};
use crate::recognize::CalHCertificate;
use crate::tree::{GadgetNodes, LeafTree, NodeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub tree: LeafTree,
    pub gadget: GadgetNodes,
    /// Set when the surgery did not produce the gadget and the tree came
    /// from a pinned exhaustive search instead.
    pub fallback: Option<String>,
}

/// A 5-leaf root of `h` containing the gadget for `cert`.
pub fn normalize_t0(h: &Graph, cert: &CalHCertificate, t: &LeafTree) -> Result<LeafTree> {
    Ok(normalize_t0_gadget(h, cert, t, &SearchLimits::default())?.tree)
}

pub fn normalize_t0_gadget(
    h: &Graph,
    cert: &CalHCertificate,
    t: &LeafTree,
    limits: &SearchLimits,
) -> Result<Normalized> {
    if h.has_similar_pair() {
        return Err(Error::Precondition("graph has similar vertices".into()));
    }
    cert.check(h)?;
    ensure_root(h, t, 5, "input tree").map_err(|e| Error::Precondition(e.to_string()))?;

    let surgery = reshape(cert, t).and_then(|tree| {
        ensure_root(h, &tree, 5, "reshaped tree")?;
        let gadget = find_gadget(cert, &tree)?;
        Ok(Normalized { tree, gadget, fallback: None })
    });
    match surgery {
        Ok(done) => Ok(done),
        Err(e) => {
            let reason = format!("gadget surgery failed for {cert:?}: {e}");
            warn!("{reason}; searching for a root with the gadget distances");
            let tree = pinned_search(h, cert, limits)?;
            let tree = rehome_leaf(cert, &tree)?;
            ensure_root(h, &tree, 5, "pinned search result")?;
            let gadget = find_gadget(cert, &tree)?;
            Ok(Normalized { tree, gadget, fallback: Some(reason) })
        }
    }
}

/// Deletes `u`'s pendant path and hangs `u` four edges below `c1`'s
/// neighbor. Valid because no leaf sits two edges from `c1`.
fn rehome_leaf(cert: &CalHCertificate, t: &LeafTree) -> Result<LeafTree> {
    let mut out = t.clone();
    out.delete_in_place(cert.leaf)?;
    let a = out.leaf_neighbor(cert.c1())?;
    out.attach_in_place(a, 4, cert.leaf)?;
    Ok(out)
}

/// The case analysis on `t = |C|` and `max d(c1, ci)`.
fn reshape(cert: &CalHCertificate, t: &LeafTree) -> Result<LeafTree> {
    let c1 = cert.c1();
    let mut out = rehome_leaf(cert, t)?;
    if find_gadget(cert, &out).is_ok() {
        return Ok(out);
    }
    let rest = &cert.clique[1..];
    let dist = |t: &LeafTree, c: usize| t.leaf_distance(c1, c);
    let mut far = rest[0];
    for &c in rest {
        if dist(&out, c)? > dist(&out, far)? {
            far = c;
        }
    }
    let max = dist(&out, far)?;
    let path = out.path(out.node(c1)?, out.node(far)?)?;
    if !(3..=5).contains(&max) {
        return Err(Error::Precondition(format!("d(c1, {far}) = {max} outside 3..=5")));
    }
    let (a, b) = (path[1], path[2]);

    if rest.len() == 1 {
        // lengthen a-b until c2 sits five edges from c1
        if max < 5 {
            out.subdivide_in_place(a, b, 5 - max)?;
        }
        return Ok(out);
    }
    match max {
        3 => {
            // everything moves two edges away from c1; u follows c1's new neighbor
            out.subdivide_in_place(out.node(c1)?, a, 2)?;
            rehome_leaf(cert, &out)
        }
        4 => {
            // path c1 a b c far; b becomes the hub
            let mut short_at_b = None;
            let mut at_a = Vec::new();
            for &c in rest.iter().filter(|&&c| c != far) {
                match out.pendant_path(c)? {
                    (x, 1) if x == b && short_at_b.is_none() => short_at_b = Some(c),
                    (x, _) if x == a => at_a.push(c),
                    _ => {}
                }
            }
            if let Some(c) = short_at_b {
                lengthen_leaf_edge(&mut out, cert, b, c)?;
            }
            for c in at_a {
                let len = out.delete_in_place(c)?.len();
                out.attach_in_place(b, len, c)?;
            }
            out.subdivide_in_place(a, b, 1)?;
            Ok(out)
        }
        _ => {
            // path c1 a b c d far; c becomes the hub, mirroring the case above
            let hub = path[3];
            for &c in rest.iter().filter(|&&c| c != far) {
                if out.node_distance(hub, out.node(c)?)? == 2 {
                    continue;
                }
                match out.pendant_path(c)? {
                    (x, 1) if x == hub => lengthen_leaf_edge(&mut out, cert, hub, c)?,
                    _ => {
                        out.delete_in_place(c)?;
                        out.attach_in_place(hub, 2, c)?;
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Puts a new node `m` on the edge `hub - c` and re-hangs from `m` every
/// branch of `hub` without clique vertices. Distances from `c` are
/// unchanged; pairs across `m` only move apart, and every such pair was
/// already non-adjacent: a non-clique vertex within three edges of `hub`
/// would see both `c` and the clique vertex two edges below `hub`.
fn lengthen_leaf_edge(t: &mut LeafTree, cert: &CalHCertificate, hub: NodeId, c: usize) -> Result<()> {
    let m = t.subdivide_in_place(hub, t.node(c)?, 1)?[0];
    let branches: Vec<NodeId> = t.neighbors(hub).filter(|&r| r != m).collect();
    for r in branches {
        if !t.side_labels(hub, r).iter().any(|l| cert.clique.contains(l)) {
            t.move_branch(hub, r, m)?;
        }
    }
    Ok(())
}

/// Locates the gadget nodes and checks every gadget distance.
fn find_gadget(cert: &CalHCertificate, t: &LeafTree) -> Result<GadgetNodes> {
    let c1 = cert.c1();
    let rest = &cert.clique[1..];
    let path = t.path(t.node(c1)?, t.node(rest[0])?)?;
    let missing = |what: String| Err(Error::Construction(format!("no gadget: {what}")));
    if path.len() != 6 {
        return missing(format!("d(c1, {}) = {}", rest[0], path.len() - 1));
    }
    let gadget = GadgetNodes { a: path[1], b: path[2], hub: path[3] };
    if t.pendant_path(cert.leaf)? != (gadget.a, 4) {
        return missing(format!("leaf {} is not four edges below a", cert.leaf));
    }
    let from_hub = t.distances_from(gadget.hub);
    for (i, &c) in rest.iter().enumerate() {
        if from_hub[&c] != 2 || t.leaf_distance(c1, c)? != 5 {
            return missing(format!("clique vertex {c} is not two edges below the hub"));
        }
        for &d in &rest[i + 1..] {
            if t.leaf_distance(c, d)? != 4 {
                return missing(format!("d({c}, {d}) != 4"));
            }
        }
    }
    Ok(gadget)
}

fn pinned_search(h: &Graph, cert: &CalHCertificate, limits: &SearchLimits) -> Result<LeafTree> {
    let c1 = cert.c1();
    let rest = &cert.clique[1..];
    let mut pins = vec![PinnedDistance { u: c1, v: cert.leaf, distance: 5 }];
    for (i, &c) in rest.iter().enumerate() {
        pins.push(PinnedDistance { u: c1, v: c, distance: 5 });
        for &d in &rest[i + 1..] {
            pins.push(PinnedDistance { u: c, v: d, distance: 4 });
        }
    }
    match oracle_root_pinned(h, 5, limits, &pins)? {
        RootVerdict::Root(t) => Ok(t),
        RootVerdict::NoRoot => Err(Error::Construction(format!("no 5-leaf root realizes the gadget for {cert:?}"))),
        RootVerdict::Inconclusive(r) => Err(Error::Inconclusive(format!(
            "gadget search stopped after {} topologies: {}",
            r.topologies_explored, r.reason
        ))),
    }
}
