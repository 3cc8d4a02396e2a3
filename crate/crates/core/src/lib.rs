//! Recognition and explicit construction of k-leaf roots.
//!
//! A tree `T` is a *k-leaf root* of a graph `G` when the leaves of `T` are
//! exactly the vertices of `G` and two vertices are adjacent iff their
//! leaves are at distance at most `k` in `T`. This crate recognizes 2-, 3-
//! and 4-leaf powers, builds explicit roots, turns 4-leaf roots of graphs
//! with a degree-one vertex into 5-leaf roots, and checks everything
//! against an exhaustive search oracle on small graphs.

pub mod cli;
pub mod construct;
pub mod error;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod patterns;
pub mod recognize;
pub mod tree;

pub use construct::{
    build_2_root, build_3_root, build_root, expand_similar, four_to_five, four_to_k, lift_plus_two, normalize_t0,
    stretch_3_to_k, RootMethod,
};
pub use error::{Error, Result};
pub use graph::{Chordality, Graph};
pub use patterns::{Pattern, PatternHit, PatternSet};
pub use recognize::{recognize_2, recognize_3, recognize_4, reduce_similar, SimilarReduction, Verdict, Witness};
pub use tree::{is_root, verify_root, LeafTree, NodeId, Violation};
