//! Named small graphs and an induced-subgraph matcher.
//!
//! Pattern files are line oriented:
//!
//! ```text
//! # comment
//! pattern bull 5
//! 0 1
//! ...
//! end
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::canonical_form;

const THREE_LEAF_FILE: &str = include_str!("../data/three_leaf.patterns");
const FIGURE1_FILE: &str = include_str!("../data/figure1.patterns");

pub const MIN_PATTERN_N: usize = 4;
pub const MAX_PATTERN_N: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pattern {
    pub name: String,
    pub graph: Graph,
}

impl Pattern {
    pub fn new(name: impl Into<String>, graph: Graph) -> Result<Self> {
        let name = name.into();
        let invalid = |msg: &str| Error::InvalidPattern { name: name.clone(), msg: msg.to_string() };
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(invalid("name must be a single non-empty token"));
        }
        if !(MIN_PATTERN_N..=MAX_PATTERN_N).contains(&graph.n()) {
            return Err(invalid("vertex count must be between 4 and 10"));
        }
        if !graph.is_connected() {
            return Err(invalid("pattern graph must be connected"));
        }
        Ok(Pattern { name, graph })
    }
}

/// An ordered collection of pairwise non-isomorphic, uniquely named patterns.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PatternSet {
    patterns: Vec<Pattern>,
}

/// A pattern found inside a host graph: `embedding[p] = host vertex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternHit {
    pub name: String,
    pub embedding: Vec<usize>,
}

impl PatternSet {
    pub fn new(patterns: Vec<Pattern>) -> Result<Self> {
        let mut names = BTreeSet::new();
        let mut forms: Vec<(Vec<u8>, &str)> = Vec::new();
        for p in &patterns {
            if !names.insert(p.name.as_str()) {
                return Err(Error::DuplicatePattern(p.name.clone()));
            }
            let form = canonical_form(&p.graph)?;
            if let Some((_, other)) = forms.iter().find(|(f, _)| *f == form) {
                return Err(Error::IsomorphicPatterns(other.to_string(), p.name.clone()));
            }
            forms.push((form, &p.name));
        }
        Ok(PatternSet { patterns })
    }

    /// Bull, dart and gem.
    pub fn three_leaf() -> PatternSet {
        load_pattern_file(THREE_LEAF_FILE.as_bytes()).expect("shipped three-leaf pattern file is valid")
    }

    /// The forbidden patterns for 4-leaf powers without similar vertices.
    pub fn figure1() -> PatternSet {
        load_pattern_file(FIGURE1_FILE.as_bytes()).expect("shipped G1..G8 pattern file is valid")
    }

    pub fn patterns(&self) -> &[Pattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&Pattern> {
        self.patterns.iter().find(|p| p.name == name)
    }

    /// Writes the set in the pattern file format, without comments.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.patterns {
            let _ = writeln!(out, "pattern {} {}", p.name, p.graph.n());
            for (u, v) in p.graph.edges() {
                let _ = writeln!(out, "{u} {v}");
            }
            out.push_str("end\n");
        }
        out
    }
}

/// Parses a pattern file and checks every set invariant.
pub fn load_pattern_file(bytes: &[u8]) -> Result<PatternSet> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse { line: 0, msg: format!("invalid UTF-8: {e}") })?;
    let mut patterns = Vec::new();
    // (name, n, edges, header line)
    type Open = (String, usize, Vec<(usize, usize)>, usize);
    let mut open: Option<Open> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match (tokens.as_slice(), open.as_mut()) {
            (["pattern", name, n], None) => {
                let n = n.parse::<usize>().map_err(|_| err(format!("bad vertex count {n:?}")))?;
                open = Some((name.to_string(), n, Vec::new(), line_no));
            }
            (["pattern", ..], Some(_)) => return Err(err("pattern started before previous `end`".into())),
            (["end"], Some(_)) => {
                let (name, n, edges, header) = open.take().unwrap();
                let graph =
                    Graph::from_edges(n, &edges).map_err(|e| Error::Parse { line: header, msg: e.to_string() })?;
                patterns.push(Pattern::new(name, graph)?);
            }
            ([u, v], Some((_, _, edges, _))) => {
                let parse = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad vertex {s:?}")));
                edges.push((parse(u)?, parse(v)?));
            }
            _ => return Err(err(format!("unexpected line {line:?}"))),
        }
    }
    if let Some((name, _, _, header)) = open {
        return Err(Error::Parse { line: header, msg: format!("pattern {name:?} is missing `end`") });
    }
    PatternSet::new(patterns)
}

/// Lexicographically least injective map from the pattern's vertices into
/// `g` that preserves adjacency and non-adjacency.
pub fn find_induced(g: &Graph, p: &Graph) -> Option<Vec<usize>> {
    if p.n() > g.n() || p.edge_count() > g.edge_count() {
        return None;
    }
    let mut m = Matcher { g, p, map: Vec::with_capacity(p.n()), used: vec![false; g.n()] };
    m.extend().then_some(m.map)
}

struct Matcher<'a> {
    g: &'a Graph,
    p: &'a Graph,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn extend(&mut self) -> bool {
        let i = self.map.len();
        if i == self.p.n() {
            return true;
        }
        for h in self.g.vertices() {
            if self.used[h] || self.g.degree(h) < self.p.degree(i) {
                continue;
            }
            let consistent =
                self.map.iter().enumerate().all(|(j, &hj)| self.p.has_edge(i, j) == self.g.has_edge(h, hj));
            if !consistent {
                continue;
            }
            self.used[h] = true;
            self.map.push(h);
            if self.extend() {
                return true;
            }
            self.map.pop();
            self.used[h] = false;
        }
        false
    }
}

/// First pattern of the set (in set order) occurring as an induced subgraph.
pub fn contains_any(g: &Graph, set: &PatternSet) -> Option<PatternHit> {
    set.patterns()
        .iter()
        .find_map(|p| find_induced(g, &p.graph).map(|embedding| PatternHit { name: p.name.clone(), embedding }))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All injections, checked one by one.
    fn brute_force(g: &Graph, p: &Graph) -> Option<Vec<usize>> {
        fn rec(g: &Graph, p: &Graph, map: &mut Vec<usize>) -> bool {
            if map.len() == p.n() {
                return (0..p.n()).all(|i| (0..i).all(|j| p.has_edge(i, j) == g.has_edge(map[i], map[j])));
            }
            for h in g.vertices() {
                if map.contains(&h) {
                    continue;
                }
                map.push(h);
                if rec(g, p, map) {
                    return true;
                }
                map.pop();
            }
            false
        }
        let mut map = Vec::new();
        rec(g, p, &mut map).then_some(map)
    }

    fn named(set: &PatternSet, name: &str) -> Graph {
        set.get(name).unwrap().graph.clone()
    }

    #[test]
    fn three_leaf_file() {
        let s = PatternSet::three_leaf();
        let names: Vec<&str> = s.patterns().iter().map(|p| p.name.as_str()).collect();
        assert_eq!(names, ["bull", "dart", "gem"]);
        let bull = named(&s, "bull");
        assert_eq!((bull.n(), bull.edge_count()), (5, 5));
        let dart = named(&s, "dart");
        assert_eq!((dart.n(), dart.edge_count()), (5, 6));
        let gem = named(&s, "gem");
        assert_eq!((gem.n(), gem.edge_count()), (5, 7));
    }

    #[test]
    fn find_examples() {
        let s = PatternSet::three_leaf();
        let bull = named(&s, "bull");
        assert_eq!(find_induced(&bull, &bull), Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(find_induced(&Graph::cycle(4), &bull), None);
        let gem = named(&s, "gem");
        let host = Graph::empty(1).disjoint_union(&gem);
        let emb = find_induced(&host, &gem).unwrap();
        assert!(emb.iter().all(|&v| v >= 1));
    }

    #[test]
    fn contains_any_examples() {
        let s = PatternSet::three_leaf();
        assert_eq!(contains_any(&named(&s, "bull"), &s).unwrap().name, "bull");
        assert_eq!(contains_any(&Graph::path(4), &s), None);
        assert_eq!(contains_any(&Graph::complete(3), &PatternSet::figure1()), None);
    }

    #[test]
    fn matcher_agrees_with_brute_force() {
        let s = PatternSet::three_leaf();
        let hosts = crate::oracle::enumerate_graphs(6, false).unwrap();
        for p in s.patterns() {
            for g in &hosts {
                assert_eq!(find_induced(g, &p.graph), brute_force(g, &p.graph), "{} in {g:?}", p.name);
            }
        }
    }

    #[test]
    fn file_errors() {
        let dup = "pattern a 4\n0 1\n1 2\n2 3\nend\npattern a 4\n0 1\n1 2\n2 3\n0 3\n0 2\nend\n";
        assert_eq!(load_pattern_file(dup.as_bytes()), Err(Error::DuplicatePattern("a".into())));
        let iso = "pattern a 4\n0 1\n1 2\n2 3\nend\npattern b 4\n1 0\n0 3\n3 2\nend\n";
        assert_eq!(load_pattern_file(iso.as_bytes()), Err(Error::IsomorphicPatterns("a".into(), "b".into())));
        let bad = "pattern a 4\n0 1\nzap\nend\n";
        assert!(matches!(load_pattern_file(bad.as_bytes()), Err(Error::Parse { line: 3, .. })));
        let open = "pattern a 4\n0 1\n";
        assert!(matches!(load_pattern_file(open.as_bytes()), Err(Error::Parse { line: 1, .. })));
        let disconnected = "pattern a 4\n0 1\n2 3\nend\n";
        assert!(matches!(load_pattern_file(disconnected.as_bytes()), Err(Error::InvalidPattern { .. })));
        let looped = "pattern a 4\n0 1\n1 1\nend\n";
        assert!(matches!(load_pattern_file(looped.as_bytes()), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn text_round_trip() {
        for set in [PatternSet::three_leaf(), PatternSet::figure1()] {
            let text = set.to_text();
            let again = load_pattern_file(text.as_bytes()).unwrap();
            assert_eq!(again, set);
            assert_eq!(again.to_text(), text);
        }
    }
}
