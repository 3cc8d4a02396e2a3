//! Text formats for graphs and trees.
//!
//! Graphs: a `<n> <m>` header followed by `m` lines `<u> <v>`, 0-based;
//! `#` starts a comment. Trees: one edge per line between node names `L<v>`
//! (the leaf of vertex `v`) and `I<j>` (internal node `j`); a tree with a
//! single node is the single line `L<v>`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::tree::{LeafTree, NodeId};

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then(|| (i + 1, body.split_whitespace().collect()))
    })
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse { line, msg: format!("expected a non-negative integer, got {tok:?}") })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut it = lines(text);
    let (hline, header) = it.next().ok_or(Error::Parse { line: 0, msg: "missing `<n> <m>` header".into() })?;
    let [n, m] = header.as_slice() else {
        return Err(Error::Parse { line: hline, msg: "header must be `<n> <m>`".into() });
    };
    let (n, m) = (number(hline, n)?, number(hline, m)?);
    let mut seen = BTreeSet::new();
    let mut last = hline;
    for (line, toks) in it {
        last = line;
        let [u, v] = toks.as_slice() else {
            return Err(Error::Parse { line, msg: "edge line must be `<u> <v>`".into() });
        };
        let (u, v) = (number(line, u)?, number(line, v)?);
        let problem = if u >= n || v >= n {
            Some(Error::VertexOutOfRange { vertex: u.max(v), n })
        } else if u == v {
            Some(Error::SelfLoop(u))
        } else if !seen.insert((u.min(v), u.max(v))) {
            Some(Error::DuplicateEdge(u.min(v), u.max(v)))
        } else {
            None
        };
        if let Some(e) = problem {
            return Err(Error::Parse { line, msg: e.to_string() });
        }
    }
    if seen.len() != m {
        return Err(Error::Parse { line: last, msg: format!("header promises {m} edges, found {}", seen.len()) });
    }
    Ok(Graph::from_edge_iter(n, seen))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeFormat {
    Edgelist,
    Dot,
    Newick,
}

impl FromStr for TreeFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edgelist" => Ok(TreeFormat::Edgelist),
            "dot" => Ok(TreeFormat::Dot),
            "newick" => Ok(TreeFormat::Newick),
            _ => Err(Error::Parse { line: 0, msg: format!("unknown tree format {s:?}") }),
        }
    }
}

/// `L<v>` for leaves, `I<j>` for internal nodes numbered in id order.
fn node_names(t: &LeafTree) -> BTreeMap<NodeId, String> {
    let mut internal = 0;
    t.nodes()
        .map(|v| {
            let name = match t.label(v) {
                Some(l) => format!("L{l}"),
                None => {
                    internal += 1;
                    format!("I{}", internal - 1)
                }
            };
            (v, name)
        })
        .collect()
}

pub fn serialize_tree(t: &LeafTree, format: TreeFormat) -> String {
    match format {
        TreeFormat::Edgelist => write_edgelist(t),
        TreeFormat::Dot => write_dot(t),
        TreeFormat::Newick => write_newick(t),
    }
}

pub fn write_edgelist(t: &LeafTree) -> String {
    let names = node_names(t);
    if t.edge_count() == 0 {
        return format!("{}\n", names.values().next().cloned().unwrap_or_default());
    }
    let mut out = String::new();
    for (a, b) in t.edges() {
        let _ = writeln!(out, "{} {}", names[&a], names[&b]);
    }
    out
}

pub fn write_dot(t: &LeafTree) -> String {
    let names = node_names(t);
    let mut out = String::from("graph leafroot {\n");
    for v in t.nodes() {
        match t.label(v) {
            Some(l) => {
                let _ = writeln!(out, "  {} [shape=box, label=\"{l}\"];", names[&v]);
            }
            None => {
                let _ = writeln!(out, "  {} [shape=point];", names[&v]);
            }
        }
    }
    for (a, b) in t.edges() {
        let _ = writeln!(out, "  {} -- {};", names[&a], names[&b]);
    }
    out.push_str("}\n");
    out
}

/// Rooted at the lowest internal node (or the lowest node when there is
/// none), unit branch lengths, leaves named by vertex.
pub fn write_newick(t: &LeafTree) -> String {
    let Some(root) = t.internal_nodes().next().or_else(|| t.nodes().next()) else {
        return ";\n".into();
    };
    let mut out = String::new();
    newick_rec(t, root, None, &mut out);
    out.push_str(";\n");
    out
}

fn newick_rec(t: &LeafTree, v: NodeId, parent: Option<NodeId>, out: &mut String) {
    let children: Vec<NodeId> = t.neighbors(v).filter(|&w| Some(w) != parent).collect();
    if !children.is_empty() {
        out.push('(');
        for (i, &c) in children.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            newick_rec(t, c, Some(v), out);
            out.push_str(":1");
        }
        out.push(')');
    }
    if let Some(l) = t.label(v) {
        let _ = write!(out, "{l}");
    }
}

pub fn parse_tree(text: &str, format: TreeFormat) -> Result<LeafTree> {
    match format {
        TreeFormat::Edgelist => parse_edgelist(text),
        TreeFormat::Newick => parse_newick(text),
        TreeFormat::Dot => parse_dot(text),
    }
}

/// Reads the `graph { ... }` subset written by [`write_dot`]: node
/// statements and `a -- b` edges over `L<v>` / `I<j>` names.
pub fn parse_dot(text: &str) -> Result<LeafTree> {
    let mut edgelist = String::new();
    let mut declared = Vec::new();
    let mut opened = false;
    for (i, raw) in text.lines().enumerate() {
        let err = |msg: &str| Error::Parse { line: i + 1, msg: msg.into() };
        let line = raw.split("//").next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if !opened {
            if !(line.starts_with("graph") && line.ends_with('{')) {
                return Err(err("expected `graph <name> {`"));
            }
            opened = true;
            continue;
        }
        if line == "}" {
            opened = false;
            continue;
        }
        let stmt = line.trim_end_matches(';');
        if let Some((a, b)) = stmt.split_once("--") {
            let _ = writeln!(edgelist, "{} {}", a.trim(), b.trim());
        } else {
            let name = stmt.split('[').next().unwrap_or("").trim();
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(err("expected a node or edge statement"));
            }
            declared.push(name.to_string());
        }
    }
    if opened {
        return Err(Error::Parse { line: text.lines().count(), msg: "missing closing `}`".into() });
    }
    if edgelist.is_empty() {
        edgelist = declared.join("\n");
    }
    parse_edgelist(&edgelist)
}

pub fn parse_edgelist(text: &str) -> Result<LeafTree> {
    #[derive(Default)]
    struct Acc {
        ids: BTreeMap<String, NodeId>,
        labels: Vec<(NodeId, usize)>,
    }
    impl Acc {
        fn id(&mut self, line: usize, name: &str) -> Result<NodeId> {
            if let Some(&id) = self.ids.get(name) {
                return Ok(id);
            }
            let bad = || Error::Parse { line, msg: format!("bad node name {name:?}, expected L<v> or I<j>") };
            let (kind, rest) = name.split_at_checked(1).ok_or_else(bad)?;
            let idx: usize = rest.parse().map_err(|_| bad())?;
            let id = self.ids.len();
            match kind {
                "L" => self.labels.push((id, idx)),
                "I" => {}
                _ => return Err(bad()),
            }
            self.ids.insert(name.to_string(), id);
            Ok(id)
        }
    }
    let mut acc = Acc::default();
    let mut edges = Vec::new();
    let mut single = None;
    for (line, toks) in lines(text) {
        match toks.as_slice() {
            [a] => single = Some((line, acc.id(line, a)?)),
            [a, b] => {
                let e = (acc.id(line, a)?, acc.id(line, b)?);
                edges.push(e);
            }
            _ => return Err(Error::Parse { line, msg: "tree line must be `<node> <node>`".into() }),
        }
    }
    if let Some((line, _)) = single.filter(|_| acc.ids.len() > 1) {
        return Err(Error::Parse { line, msg: "a lone node line is only allowed for a one-node tree".into() });
    }
    let nodes: Vec<NodeId> = (0..acc.ids.len()).collect();
    LeafTree::from_parts(&nodes, &edges, &acc.labels)
}

/// Reads the subset written by [`write_newick`]: nested parentheses,
/// integer vertex names on leaves (and optionally the root), and positive
/// integer branch lengths, each expanded into a path of unit edges.
pub fn parse_newick(text: &str) -> Result<LeafTree> {
    let mut p = Newick { s: text.trim().as_bytes(), pos: 0, nodes: 0, edges: Vec::new(), labels: Vec::new() };
    p.subtree()?;
    p.skip_ws();
    if p.eat(b';') {
        p.skip_ws();
    }
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    let nodes: Vec<NodeId> = (0..p.nodes).collect();
    LeafTree::from_parts(&nodes, &p.edges, &p.labels)
}

struct Newick<'a> {
    s: &'a [u8],
    pos: usize,
    nodes: usize,
    edges: Vec<(NodeId, NodeId)>,
    labels: Vec<(NodeId, usize)>,
}

impl Newick<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: 1, msg: format!("newick, byte {}: {msg}", self.pos) }
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        let hit = self.s.get(self.pos) == Some(&c);
        self.pos += hit as usize;
        hit
    }

    fn int(&mut self) -> Option<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn fresh(&mut self) -> NodeId {
        self.nodes += 1;
        self.nodes - 1
    }

    /// Parses one subtree and returns its top node.
    fn subtree(&mut self) -> Result<NodeId> {
        let me = self.fresh();
        if self.eat(b'(') {
            loop {
                let child = self.subtree()?;
                let len = if self.eat(b':') {
                    self.int().filter(|&l| l > 0).ok_or_else(|| self.err("branch length must be a positive integer"))?
                } else {
                    1
                };
                let mut prev = me;
                for _ in 1..len {
                    let x = self.fresh();
                    self.edges.push((prev, x));
                    prev = x;
                }
                self.edges.push((prev, child));
                if self.eat(b')') {
                    break;
                }
                if !self.eat(b',') {
                    return Err(self.err("expected `,` or `)`"));
                }
            }
            if let Some(l) = self.int() {
                self.labels.push((me, l));
            }
        } else {
            let l = self.int().ok_or_else(|| self.err("expected a vertex name"))?;
            self.labels.push((me, l));
        }
        Ok(me)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::t0_tree;

    #[test]
    fn graph_examples() {
        assert_eq!(parse_graph("3 2\n0 1\n1 2\n").unwrap(), Graph::path(3));
        assert!(matches!(parse_graph("2 1\n0 0\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("4 3\n0 1\n1 2\n0 1\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_graph("2 1\n0 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("3 3\n0 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("3 1\n0 x\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph(""), Err(Error::Parse { .. })));
        let commented = "# a path\n3 2 # header\n0 1\n\n1 2 # last\n";
        assert_eq!(parse_graph(commented).unwrap(), Graph::path(3));
        let g = Graph::cycle(5).disjoint_union(&Graph::empty(2));
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn edgelist_examples() {
        let star = LeafTree::star(&[0, 1]).unwrap();
        assert_eq!(write_edgelist(&star), "I0 L0\nI0 L1\n");
        assert_eq!(write_edgelist(&LeafTree::single(3)), "L3\n");
        assert!(parse_edgelist("L3\n").unwrap().same_leaf_metric(&LeafTree::single(3)));
        let t = t0_tree(3).unwrap();
        let back = parse_edgelist(&write_edgelist(&t)).unwrap();
        assert!(back.same_leaf_metric(&t));
        assert!(matches!(parse_edgelist("I0 X1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_edgelist("I0 L0\n").is_err());
    }

    #[test]
    fn newick_examples() {
        let t = t0_tree(2).unwrap();
        let back = parse_newick(&write_newick(&t)).unwrap();
        assert_eq!(back.leaf_distance(0, 2).unwrap(), 5);
        assert!(back.same_leaf_metric(&t));
        assert_eq!(write_newick(&LeafTree::single(0)), "0;\n");
        assert_eq!(write_newick(&LeafTree::star(&[0, 1, 2]).unwrap()), "(0:1,1:1,2:1);\n");
        let pair = parse_newick("(1:3)0;").unwrap();
        assert_eq!(pair.leaf_distance(0, 1).unwrap(), 3);
        assert!(parse_newick("(0:1,1:0);").is_err());
        assert!(parse_newick("(0,1").is_err());
    }

    #[test]
    fn dot_mentions_every_edge() {
        let t = t0_tree(2).unwrap();
        let dot = write_dot(&t);
        assert_eq!(dot.matches(" -- ").count(), t.edge_count());
        assert!(dot.contains("label=\"2\""));
        assert!(parse_dot(&dot).unwrap().same_leaf_metric(&t));
        let single = LeafTree::single(3);
        assert!(parse_dot(&write_dot(&single)).unwrap().same_leaf_metric(&single));
        assert!(matches!(parse_dot("digraph {\n}\n"), Err(Error::Parse { line: 1, .. })));
        assert!(parse_dot("graph t {\n  L0 -- I0;\n").is_err());
    }
}
