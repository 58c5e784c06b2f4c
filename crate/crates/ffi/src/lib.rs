//! C interface to the netfp library.
//!
//! Graphs are opaque handles created by `netfp_graph_*` and `netfp_gen_*`
//! functions and released with `netfp_graph_free`. Every fallible call
//! returns a `NetfpStatus`; on failure `netfp_last_error_message` describes
//! the most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use netfp::features::{
    clustering_coefficient, degree_assortativity, featurize, motif_census, FeatureOptions,
};
use netfp::generators::{gen_ba, gen_er, gen_ff, gen_ws};
use netfp::graph::{parse_gml, simplify, write_gml};
use netfp::null_model::EnsembleSpec;
use netfp::{Error, Graph};

/// Opaque graph handle.
pub struct NetfpGraph {
    inner: Graph,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NetfpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    /// The requested quantity is undefined for this graph.
    Undefined = 5,
    Panic = 6,
}

/// The eight-number fingerprint of a graph.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetfpFeatures {
    pub clustering: f64,
    /// 0 when `assortativity_defined` is false.
    pub assortativity: f64,
    pub assortativity_defined: bool,
    pub sp: [f64; 6],
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(NetfpStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::GmlSyntax { .. } | Error::UndeclaredNode { .. } => NetfpStatus::Parse,
            _ => NetfpStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(NetfpStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> NetfpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NetfpStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            NetfpStatus::Panic
        }
    }
}

unsafe fn graph_ref<'a>(g: *const NetfpGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.inner).ok_or_else(|| null("graph"))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_graph(out: *mut *mut NetfpGraph, g: Graph) -> Result<(), Failure> {
    put(out, Box::into_raw(Box::new(NetfpGraph { inner: g })))
}

/// Message for the last failed call on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn netfp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses GML text. Self-loops, duplicate and zero-weight edges are dropped.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn netfp_graph_from_gml(
    text: *const c_char,
    out: *mut *mut NetfpGraph,
) -> NetfpStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure(NetfpStatus::InvalidUtf8, e.to_string()))?;
        let (g, _) = simplify(&parse_gml(s)?);
        put_graph(out, g)
    })
}

/// Builds a graph on `node_count` nodes from `edge_count` pairs stored
/// flat in `pairs` (`2 * edge_count` entries). Loops and repeated edges are
/// rejected.
///
/// # Safety
/// `pairs` must point to `2 * edge_count` readable values (it may be null
/// when `edge_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn netfp_graph_from_edges(
    node_count: usize,
    pairs: *const usize,
    edge_count: usize,
    out: *mut *mut NetfpGraph,
) -> NetfpStatus {
    guard(|| {
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if pairs.is_null() {
            return Err(null("pairs"));
        } else {
            std::slice::from_raw_parts(pairs, 2 * edge_count)
        };
        let g = Graph::new(node_count, flat.chunks_exact(2).map(|p| (p[0], p[1])))?;
        put_graph(out, g)
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `g` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn netfp_graph_free(g: *mut NetfpGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn netfp_graph_node_count(g: *const NetfpGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.node_count())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn netfp_graph_edge_count(g: *const NetfpGraph) -> usize {
    g.as_ref().map_or(0, |h| h.inner.edge_count())
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn netfp_graph_degree(
    g: *const NetfpGraph,
    node: usize,
    out: *mut usize,
) -> NetfpStatus {
    guard(|| {
        let g = graph_ref(g)?;
        if node >= g.node_count() {
            return Err(Failure(
                NetfpStatus::InvalidArgument,
                format!("node {node} out of range (graph has {})", g.node_count()),
            ));
        }
        put(out, g.degree(node))
    })
}

/// Serializes to GML. Free the result with `netfp_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn netfp_graph_to_gml(
    g: *const NetfpGraph,
    out: *mut *mut c_char,
) -> NetfpStatus {
    guard(|| {
        let text = write_gml(graph_ref(g)?);
        let c = CString::new(text)
            .map_err(|_| Failure(NetfpStatus::InvalidArgument, "label contains NUL".into()))?;
        put(out, c.into_raw())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn netfp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Global clustering coefficient (0 when the graph has no connected triples).
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn netfp_clustering(g: *const NetfpGraph, out: *mut f64) -> NetfpStatus {
    guard(|| put(out, clustering_coefficient(graph_ref(g)?)))
}

/// Degree assortativity. Returns `NETFP_STATUS_UNDEFINED` and leaves `out`
/// untouched when it is undefined.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn netfp_assortativity(g: *const NetfpGraph, out: *mut f64) -> NetfpStatus {
    guard(|| match degree_assortativity(graph_ref(g)?) {
        Some(r) => put(out, r),
        None => Err(Failure(
            NetfpStatus::Undefined,
            "assortativity is undefined for this graph".into(),
        )),
    })
}

/// Induced four-node census in the order clique, diamond, paw, 4-cycle,
/// star, path.
///
/// # Safety
/// `g` must be a live handle and `out` must have room for 6 values.
#[no_mangle]
pub unsafe extern "C" fn netfp_motif_census(g: *const NetfpGraph, out: *mut u64) -> NetfpStatus {
    guard(|| {
        let c = motif_census(graph_ref(g)?);
        put(out.cast::<[u64; 6]>(), c.counts)
    })
}

/// Computes the fingerprint against a degree-preserving null ensemble.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn netfp_featurize(
    g: *const NetfpGraph,
    ensemble_size: usize,
    swaps_per_edge: usize,
    seed: u64,
    out: *mut NetfpFeatures,
) -> NetfpStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let spec = EnsembleSpec::new(ensemble_size, swaps_per_edge, seed)?;
        let f = featurize(g, &spec, FeatureOptions::default())?;
        put(
            out,
            NetfpFeatures {
                clustering: f.clustering,
                assortativity: f.assortativity.unwrap_or(0.0),
                assortativity_defined: f.assortativity.is_some(),
                sp: f.sp,
            },
        )
    })
}

/// Erdős–Rényi G(n, p).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn netfp_gen_er(
    n: usize,
    p: f64,
    seed: u64,
    out: *mut *mut NetfpGraph,
) -> NetfpStatus {
    guard(|| put_graph(out, gen_er(n, p, seed)?))
}

/// Watts–Strogatz ring with `k` neighbours per node and rewiring probability `p`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn netfp_gen_ws(
    n: usize,
    k: usize,
    p: f64,
    seed: u64,
    out: *mut *mut NetfpGraph,
) -> NetfpStatus {
    guard(|| put_graph(out, gen_ws(n, k, p, seed)?))
}

/// Barabási–Albert growth with `m` links per new node from `m0` seed nodes.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn netfp_gen_ba(
    n: usize,
    m: usize,
    m0: usize,
    seed: u64,
    out: *mut *mut NetfpGraph,
) -> NetfpStatus {
    guard(|| put_graph(out, gen_ba(n, m, m0, seed)?))
}

/// Forest Fire growth.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn netfp_gen_ff(
    n: usize,
    p_forward: f64,
    p_backward: f64,
    ambassadors: usize,
    seed: u64,
    out: *mut *mut NetfpGraph,
) -> NetfpStatus {
    guard(|| put_graph(out, gen_ff(n, p_forward, p_backward, ambassadors, seed)?))
}
