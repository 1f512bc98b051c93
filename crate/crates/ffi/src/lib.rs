//! C ABI over `dim-core`.
//!
//! Graphs and results are opaque handles owned by the caller and released
//! with the matching `_free` function. Every fallible call returns a
//! [`DimStatus`]; on failure `dim_last_error` describes the problem for the
//! calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dim_core::graph::{verify_dim, DimCertificate, Edge, Graph};
use dim_core::io::parse_edge_list;
use dim_core::oracle::brute_force_dim;
use dim_core::solver::{solve, SolveResult};

/// Status codes; zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidGraph = 2,
    ParseError = 3,
    BudgetExceeded = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimResultKind {
    Found = 0,
    None = 1,
    HypothesisViolated = 2,
}

/// Opaque graph handle.
pub struct DimGraph {
    inner: Graph,
}

/// Opaque solver result handle.
pub struct DimResult {
    kind: DimResultKind,
    edges: Vec<Edge>,
    witness: Vec<usize>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> DimStatus) -> DimStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            DimStatus::Panic
        }
    }
}

fn null_error(what: &str) -> DimStatus {
    set_error(format!("{what} is null"));
    DimStatus::NullPointer
}

/// Message for the last failed call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dim_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn dim_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a graph on `n` vertices from `m` pairs stored flat in `edges`
/// (`2 * m` entries).
///
/// # Safety
/// `edges` must point to `2 * m` readable values (it may be null when
/// `m == 0`), and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dim_graph_new(n: usize, edges: *const usize, m: usize, out: *mut *mut DimGraph) -> DimStatus {
    guard(|| {
        if out.is_null() {
            return null_error("out");
        }
        if edges.is_null() && m > 0 {
            return null_error("edges");
        }
        let flat: &[usize] = if m == 0 { &[] } else { std::slice::from_raw_parts(edges, 2 * m) };
        match Graph::new(n, flat.chunks_exact(2).map(|p| (p[0], p[1]))) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(DimGraph { inner: g }));
                DimStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                DimStatus::InvalidGraph
            }
        }
    })
}

/// Parses one graph in the edge-list text format.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dim_graph_parse(text: *const c_char, out: *mut *mut DimGraph) -> DimStatus {
    guard(|| {
        if text.is_null() {
            return null_error("text");
        }
        if out.is_null() {
            return null_error("out");
        }
        let Ok(s) = CStr::from_ptr(text).to_str() else {
            set_error("input is not valid UTF-8");
            return DimStatus::ParseError;
        };
        match parse_edge_list(s) {
            Ok(g) => {
                *out = Box::into_raw(Box::new(DimGraph { inner: g }));
                DimStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                DimStatus::ParseError
            }
        }
    })
}

/// # Safety
/// `g` must be null or a handle from `dim_graph_new`/`dim_graph_parse` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dim_graph_free(g: *mut DimGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn dim_graph_vertex_count(g: *const DimGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.n())
}

/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn dim_graph_edge_count(g: *const DimGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.m())
}

/// Runs the solver.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dim_solve(g: *const DimGraph, out: *mut *mut DimResult) -> DimStatus {
    guard(|| {
        let Some(g) = g.as_ref() else { return null_error("graph") };
        if out.is_null() {
            return null_error("out");
        }
        let r = match solve(&g.inner).result {
            SolveResult::Found(m) => DimResult { kind: DimResultKind::Found, edges: m.edges().to_vec(), witness: vec![] },
            SolveResult::None(_) => DimResult { kind: DimResultKind::None, edges: vec![], witness: vec![] },
            SolveResult::HypothesisViolated(w) => {
                DimResult { kind: DimResultKind::HypothesisViolated, edges: vec![], witness: w.vertices }
            }
        };
        *out = Box::into_raw(Box::new(r));
        DimStatus::Ok
    })
}

/// # Safety
/// `r` must be a live result handle.
#[no_mangle]
pub unsafe extern "C" fn dim_result_kind(r: *const DimResult) -> DimResultKind {
    r.as_ref().map_or(DimResultKind::None, |r| r.kind)
}

/// Number of matching edges in a `Found` result.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn dim_result_edge_count(r: *const DimResult) -> usize {
    r.as_ref().map_or(0, |r| r.edges.len())
}

/// Copies the matching edges into `buf` as flat pairs; `cap` counts pairs.
///
/// # Safety
/// `r` must be a live result handle and `buf` must have room for `2 * cap` values.
#[no_mangle]
pub unsafe extern "C" fn dim_result_edges(r: *const DimResult, buf: *mut usize, cap: usize) -> DimStatus {
    guard(|| {
        let Some(r) = r.as_ref() else { return null_error("result") };
        if r.edges.is_empty() {
            return DimStatus::Ok;
        }
        if buf.is_null() {
            return null_error("buf");
        }
        if cap < r.edges.len() {
            set_error(format!("buffer holds {cap} pairs, need {}", r.edges.len()));
            return DimStatus::BufferTooSmall;
        }
        for (i, e) in r.edges.iter().enumerate() {
            *buf.add(2 * i) = e.u();
            *buf.add(2 * i + 1) = e.v();
        }
        DimStatus::Ok
    })
}

/// Number of witness vertices in a `HypothesisViolated` result.
///
/// # Safety
/// `r` must be null or a live result handle.
#[no_mangle]
pub unsafe extern "C" fn dim_result_witness_len(r: *const DimResult) -> usize {
    r.as_ref().map_or(0, |r| r.witness.len())
}

/// Copies the witness vertices, in role order, into `buf`.
///
/// # Safety
/// `r` must be a live result handle and `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn dim_result_witness(r: *const DimResult, buf: *mut usize, cap: usize) -> DimStatus {
    guard(|| {
        let Some(r) = r.as_ref() else { return null_error("result") };
        if r.witness.is_empty() {
            return DimStatus::Ok;
        }
        if buf.is_null() {
            return null_error("buf");
        }
        if cap < r.witness.len() {
            set_error(format!("buffer holds {cap} vertices, need {}", r.witness.len()));
            return DimStatus::BufferTooSmall;
        }
        ptr::copy_nonoverlapping(r.witness.as_ptr(), buf, r.witness.len());
        DimStatus::Ok
    })
}

/// # Safety
/// `r` must be null or a handle from `dim_solve` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dim_result_free(r: *mut DimResult) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Exhaustive existence check, bounded by `DIM_ORACLE_BUDGET`.
///
/// # Safety
/// `g` must be a live graph handle and `exists` writable.
#[no_mangle]
pub unsafe extern "C" fn dim_oracle_exists(g: *const DimGraph, exists: *mut bool) -> DimStatus {
    guard(|| {
        let Some(g) = g.as_ref() else { return null_error("graph") };
        if exists.is_null() {
            return null_error("exists");
        }
        match brute_force_dim(&g.inner) {
            Ok(r) => {
                *exists = r.exists;
                DimStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                DimStatus::BudgetExceeded
            }
        }
    })
}

/// Checks whether the `m` flat pairs in `edges` form a d.i.m. of `g`.
/// Pairs that are not edges, or do not form a matching, give `false`.
///
/// # Safety
/// `g` must be a live graph handle, `edges` must point to `2 * m` values
/// (or be null when `m == 0`), and `valid` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dim_verify(g: *const DimGraph, edges: *const usize, m: usize, valid: *mut bool) -> DimStatus {
    guard(|| {
        let Some(g) = g.as_ref() else { return null_error("graph") };
        if valid.is_null() {
            return null_error("valid");
        }
        if edges.is_null() && m > 0 {
            return null_error("edges");
        }
        let flat: &[usize] = if m == 0 { &[] } else { std::slice::from_raw_parts(edges, 2 * m) };
        let Some(pairs): Option<Vec<Edge>> = flat.chunks_exact(2).map(|p| Edge::try_new(p[0], p[1])).collect() else {
            *valid = false;
            return DimStatus::Ok;
        };
        *valid = match DimCertificate::new(pairs) {
            Ok(cert) => verify_dim(&g.inner, &cert).is_ok(),
            Err(_) => false,
        };
        DimStatus::Ok
    })
}
