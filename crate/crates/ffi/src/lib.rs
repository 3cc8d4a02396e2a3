//! C ABI over `leafpower`.
//!
//! Graphs and trees cross the boundary as opaque handles owned by the
//! caller and released with the matching `*_free`. Every fallible call
//! returns an [`LpStatus`]; on failure a message is available from
//! [`lp_last_error`] on the same thread until the next call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Duration;

use leafpower::io::{parse_graph, parse_tree, serialize_tree, TreeFormat};
use leafpower::oracle::{oracle_root, RootVerdict, SearchLimits};
use leafpower::{build_root, recognize_2, recognize_3, recognize_4, verify_root, Error, Graph, LeafTree};

/// Opaque graph handle.
pub struct LpGraph(Graph);

/// Opaque leaf-root handle.
pub struct LpTree(LeafTree);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Ok = 0,
    /// The answer is no: not a member, no root exists.
    No = 1,
    NullPointer = 2,
    InvalidArgument = 3,
    Parse = 4,
    /// A search bound was hit before an answer was found.
    Inconclusive = 5,
    Construction = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpTreeFormat {
    Edgelist = 0,
    Dot = 1,
    Newick = 2,
}

impl From<LpTreeFormat> for TreeFormat {
    fn from(f: LpTreeFormat) -> Self {
        match f {
            LpTreeFormat::Edgelist => TreeFormat::Edgelist,
            LpTreeFormat::Dot => TreeFormat::Dot,
            LpTreeFormat::Newick => TreeFormat::Newick,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Fail(LpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => LpStatus::Parse,
            Error::NotLeafPower(_) => LpStatus::No,
            Error::Inconclusive(_) | Error::TooLarge { .. } => LpStatus::Inconclusive,
            Error::Construction(_) => LpStatus::Construction,
            _ => LpStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(LpStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, clearing or setting the thread's last error and never
/// unwinding across the boundary.
fn guard(f: impl FnOnce() -> Result<LpStatus, Fail>) -> LpStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            LpStatus::Panic
        }
    }
}

unsafe fn c_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null("text"));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Fail(LpStatus::Parse, format!("text is not UTF-8: {e}")))
}

unsafe fn graph<'a>(g: *const LpGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn tree<'a>(t: *const LpTree) -> Result<&'a LeafTree, Fail> {
    t.as_ref().map(|t| &t.0).ok_or_else(|| null("tree"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<LpStatus, Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(LpStatus::Ok)
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn lp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Parses the edge-list format: a `<n> <m>` header, then `m` lines `<u> <v>`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_graph_parse(text: *const c_char, out: *mut *mut LpGraph) -> LpStatus {
    guard(|| {
        let g = parse_graph(c_str(text)?)?;
        put(out, Box::into_raw(Box::new(LpGraph(g))))
    })
}

/// Builds a graph on `n` vertices from `m` edges stored as `2m` endpoints.
///
/// # Safety
/// `edges` must point to `2 * m` readable values (or be null when `m == 0`)
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lp_graph_from_edges(
    n: usize,
    edges: *const usize,
    m: usize,
    out: *mut *mut LpGraph,
) -> LpStatus {
    guard(|| {
        let flat = match (edges.is_null(), m) {
            (_, 0) => &[][..],
            (true, _) => return Err(null("edges")),
            (false, _) => std::slice::from_raw_parts(edges, 2 * m),
        };
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(n, &pairs)?;
        put(out, Box::into_raw(Box::new(LpGraph(g))))
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lp_graph_free(g: *mut LpGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_graph_vertex_count(g: *const LpGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Decides k-leaf power membership for `k` in 2..=4; returns `Ok` or `No`.
///
/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn lp_recognize(g: *const LpGraph, k: u32) -> LpStatus {
    guard(|| {
        let g = graph(g)?;
        let verdict = match k {
            2 => recognize_2(g),
            3 => recognize_3(g),
            4 => recognize_4(g),
            _ => return Err(Fail(LpStatus::InvalidArgument, format!("k = {k} is not in 2..=4"))),
        };
        Ok(if verdict.is_member() { LpStatus::Ok } else { LpStatus::No })
    })
}

/// Builds a k-leaf root; `No` when none exists.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_root(g: *const LpGraph, k: u32, out: *mut *mut LpTree) -> LpStatus {
    guard(|| {
        let (t, _) = build_root(graph(g)?, k as usize, &SearchLimits::default())?;
        put(out, Box::into_raw(Box::new(LpTree(t))))
    })
}

/// Exhaustive search for a k-leaf root. Zero limits select the defaults.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_oracle_root(
    g: *const LpGraph,
    k: u32,
    max_internal: usize,
    max_weight: usize,
    budget_secs: u64,
    out: *mut *mut LpTree,
) -> LpStatus {
    guard(|| {
        let d = SearchLimits::default();
        let limits = SearchLimits {
            max_internal: if max_internal == 0 { d.max_internal } else { max_internal },
            max_weight: if max_weight == 0 { d.max_weight } else { max_weight },
            time_budget: if budget_secs == 0 { d.time_budget } else { Duration::from_secs(budget_secs) },
        };
        match oracle_root(graph(g)?, k as usize, &limits)? {
            RootVerdict::Root(t) => put(out, Box::into_raw(Box::new(LpTree(t)))),
            RootVerdict::NoRoot => Ok(LpStatus::No),
            RootVerdict::Inconclusive(r) => Err(Fail(LpStatus::Inconclusive, r.reason)),
        }
    })
}

/// `Ok` when `t` is a k-leaf root of `g`, `No` otherwise (the violated
/// pair is reported through [`lp_last_error`]).
///
/// # Safety
/// `g` and `t` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn lp_verify(g: *const LpGraph, t: *const LpTree, k: u32) -> LpStatus {
    guard(|| match verify_root(graph(g)?, tree(t)?, k as usize) {
        Ok(None) => Ok(LpStatus::Ok),
        Ok(Some(v)) => Err(Fail(
            LpStatus::No,
            format!("vertices {} and {} at distance {} (adjacent: {})", v.u, v.v, v.distance, v.adjacent),
        )),
        Err(e) => Err(Fail(LpStatus::No, e.to_string())),
    })
}

/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_tree_parse(text: *const c_char, format: LpTreeFormat, out: *mut *mut LpTree) -> LpStatus {
    guard(|| {
        let t = parse_tree(c_str(text)?, format.into())?;
        put(out, Box::into_raw(Box::new(LpTree(t))))
    })
}

/// Serializes `t`; release the string with [`lp_string_free`].
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_tree_serialize(t: *const LpTree, format: LpTreeFormat, out: *mut *mut c_char) -> LpStatus {
    guard(|| {
        let s = CString::new(serialize_tree(tree(t)?, format.into()))
            .map_err(|e| Fail(LpStatus::Construction, e.to_string()))?;
        put(out, s.into_raw())
    })
}

/// Distance between the leaves labeled `u` and `v`.
///
/// # Safety
/// `t` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lp_tree_leaf_distance(t: *const LpTree, u: usize, v: usize, out: *mut usize) -> LpStatus {
    guard(|| {
        let d = tree(t)?.leaf_distance(u, v)?;
        put(out, d)
    })
}

/// # Safety
/// `t` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lp_tree_free(t: *mut LpTree) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
