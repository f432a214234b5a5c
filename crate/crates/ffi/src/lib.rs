//! C interface.
//!
//! Objects are opaque heap handles created by `cg_*_new`/`cg_*_build`/`cg_*_load`
//! and released with the matching `cg_*_free`. Every fallible call returns a
//! [`CgStatus`]; on failure the message is available from
//! [`cg_last_error_message`] until the next failing call on the same thread.
//! Vertices are numbered from 1. Panics never cross the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::fs::File;
use std::io::BufWriter;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use cloudgraph::cloudpart::{cloud_cap, CloudPartition};
use cloudgraph::graph::{io, GraphFormat, StaticGraph};
use cloudgraph::hierarchy::{HierarchyOptions, SuccinctEncoding};
use cloudgraph::minor::StructureMinor;
use cloudgraph::separator::{separate_minor, SeparatorOptions, Side};
use cloudgraph::succinct::BitBudget;
use cloudgraph::treedec::{write_pace_streaming, DecomposeOptions};
use cloudgraph::{Error, Vertex};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CgStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidArgument = 2,
    Parse = 3,
    Io = 4,
    /// Self-loop, repeated edge, disconnected input or a violated density bound.
    InvalidGraph = 5,
    Format = 6,
    OutOfRange = 7,
    Internal = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CgSide {
    A = 0,
    S = 1,
    B = 2,
}

/// Simple undirected graph.
pub struct CgGraph(StaticGraph);

/// Succinct adjacency encoding.
pub struct CgEncoding(SuccinctEncoding);

/// Balanced vertex separator.
pub struct CgSeparator {
    sides: Vec<CgSide>,
    sizes: [usize; 3],
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> CgStatus {
    match e {
        Error::InvalidArgument(_) => CgStatus::InvalidArgument,
        Error::Parse { .. } => CgStatus::Parse,
        Error::Io(_) => CgStatus::Io,
        Error::Disconnected { .. }
        | Error::SelfLoop(_)
        | Error::MultiEdge(..)
        | Error::DensityViolated { .. }
        | Error::NonPlanar => CgStatus::InvalidGraph,
        Error::Format(_) => CgStatus::Format,
        Error::OutOfRange { .. } | Error::NotFound { .. } | Error::AbsentArc { .. } => CgStatus::OutOfRange,
        _ => CgStatus::Internal,
    }
}

enum Failure {
    Status(CgStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(CgStatus::NullArgument, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> CgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CgStatus::Ok,
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            CgStatus::Panic
        }
    }
}

unsafe fn path_arg(p: *const c_char) -> Result<PathBuf, Failure> {
    if p.is_null() {
        return Err(null("path"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map(PathBuf::from)
        .map_err(|_| Failure::Status(CgStatus::InvalidArgument, "path is not UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn check_vertex(n: usize, v: u32) -> Result<Vertex, Failure> {
    if v == 0 || v as usize > n {
        Err(Failure::Status(CgStatus::OutOfRange, format!("vertex {v} outside 1..={n}")))
    } else {
        Ok(v)
    }
}

fn check_factor(c: f64) -> Result<(), Failure> {
    if c.is_finite() && c > 0.0 {
        Ok(())
    } else {
        Err(Failure::Status(CgStatus::InvalidArgument, format!("cloud factor {c} must be positive")))
    }
}

/// Message of the last failure on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn cg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn cg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a graph on `n` vertices from `m` edges given as `2m` labels.
///
/// # Safety
/// `edges` must point to `2 * m` readable `u32` values (or be null when `m` is 0);
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_new(n: usize, edges: *const u32, m: usize, out: *mut *mut CgGraph) -> CgStatus {
    guard(|| {
        if edges.is_null() && m > 0 {
            return Err(null("edges"));
        }
        let flat = if m == 0 { &[][..] } else { std::slice::from_raw_parts(edges, 2 * m) };
        let pairs: Vec<(Vertex, Vertex)> = flat.chunks_exact(2).map(|e| (e[0], e[1])).collect();
        if let Some(&(u, v)) = pairs.iter().find(|&&(u, v)| u == 0 || v == 0 || u as usize > n || v as usize > n) {
            return Err(Failure::Status(CgStatus::OutOfRange, format!("edge {u}-{v} outside 1..={n}")));
        }
        let g = StaticGraph::from_edges(n, &pairs)?;
        put(out, Box::into_raw(Box::new(CgGraph(g))))
    })
}

/// Reads a canonical (`metis == false`) or METIS graph file. Disconnected
/// graphs are rejected.
///
/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_load(path: *const c_char, metis: bool, out: *mut *mut CgGraph) -> CgStatus {
    guard(|| {
        let format = if metis { GraphFormat::Metis } else { GraphFormat::Canonical };
        let g = io::load(path_arg(path)?, format)?;
        put(out, Box::into_raw(Box::new(CgGraph(g))))
    })
}

/// # Safety
/// `g` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_free(g: *mut CgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_vertex_count(g: *const CgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cg_graph_edge_count(g: *const CgGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.m())
}

/// Encodes a connected planar graph with cloud factor `c` and mini-graph
/// exponent `delta`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_encoding_build(g: *const CgGraph, c: f64, delta: u32, out: *mut *mut CgEncoding) -> CgStatus {
    guard(|| {
        let g = &handle(g, "graph")?.0;
        check_factor(c)?;
        if delta == 0 {
            return Err(Failure::Status(CgStatus::InvalidArgument, "delta must be at least 1".into()));
        }
        g.ensure_connected()?;
        let e = SuccinctEncoding::encode(g, c, &HierarchyOptions { delta, ..Default::default() })?;
        put(out, Box::into_raw(Box::new(CgEncoding(e))))
    })
}

/// # Safety
/// `path` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_encoding_load(path: *const c_char, out: *mut *mut CgEncoding) -> CgStatus {
    guard(|| {
        let e = SuccinctEncoding::load(path_arg(path)?)?;
        put(out, Box::into_raw(Box::new(CgEncoding(e))))
    })
}

/// # Safety
/// `e` must be a live handle; `path` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cg_encoding_save(e: *const CgEncoding, path: *const c_char) -> CgStatus {
    guard(|| {
        let e = &handle(e, "encoding")?.0;
        e.save(path_arg(path)?)?;
        Ok(())
    })
}

/// # Safety
/// `e` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cg_encoding_free(e: *mut CgEncoding) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cg_encoding_vertex_count(e: *const CgEncoding) -> usize {
    e.as_ref().map_or(0, |e| e.0.n())
}

/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_encoding_adjacent(e: *const CgEncoding, u: u32, v: u32, out: *mut bool) -> CgStatus {
    guard(|| {
        let e = &handle(e, "encoding")?.0;
        let (u, v) = (check_vertex(e.n(), u)?, check_vertex(e.n(), v)?);
        put(out, e.adjacent(u, v))
    })
}

/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_encoding_degree(e: *const CgEncoding, v: u32, out: *mut usize) -> CgStatus {
    guard(|| {
        let e = &handle(e, "encoding")?.0;
        put(out, e.degree(check_vertex(e.n(), v)?))
    })
}

/// Writes up to `cap` neighbours of `v` in increasing order into `buf` and
/// the full degree into `len`. Pass `cap == 0` to query the size.
///
/// # Safety
/// `e` must be a live handle; `buf` must have room for `cap` values;
/// `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_encoding_neighbors(e: *const CgEncoding, v: u32, buf: *mut u32, cap: usize, len: *mut usize) -> CgStatus {
    guard(|| {
        let e = &handle(e, "encoding")?.0;
        let mut nb: Vec<Vertex> = e.neighbors(check_vertex(e.n(), v)?).collect();
        nb.sort_unstable();
        if cap > 0 {
            if buf.is_null() {
                return Err(null("buffer"));
            }
            let k = cap.min(nb.len());
            std::ptr::copy_nonoverlapping(nb.as_ptr(), buf, k);
        }
        put(len, nb.len())
    })
}

/// Finds a balanced separator of a connected planar graph; `alpha` bounds
/// each side's share of the vertices and must lie in [2/3, 1).
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_separator_find(g: *const CgGraph, c: f64, alpha: f64, out: *mut *mut CgSeparator) -> CgStatus {
    guard(|| {
        let g = &handle(g, "graph")?.0;
        check_factor(c)?;
        if !(2.0 / 3.0 - 1e-9..1.0).contains(&alpha) {
            return Err(Failure::Status(CgStatus::InvalidArgument, format!("alpha {alpha} outside [2/3, 1)")));
        }
        g.ensure_connected()?;
        let mut budget = BitBudget::new();
        let p = CloudPartition::build_budgeted(g, cloud_cap(g.n(), c), None, &mut budget);
        let m = StructureMinor::build_budgeted(&p, 3, &mut budget)?;
        let opts = SeparatorOptions { alpha, ..Default::default() };
        let sep = separate_minor(&m, &opts, &mut budget)?;
        let sides = g
            .vertices()
            .map(|v| match sep.side(v) {
                Side::A => CgSide::A,
                Side::S => CgSide::S,
                Side::B => CgSide::B,
            })
            .collect();
        let result = CgSeparator {
            sides,
            sizes: [sep.size_a, sep.size_s, sep.size_b],
        };
        put(out, Box::into_raw(Box::new(result)))
    })
}

/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_separator_side(s: *const CgSeparator, v: u32, out: *mut CgSide) -> CgStatus {
    guard(|| {
        let s = handle(s, "separator")?;
        let v = check_vertex(s.sides.len(), v)?;
        put(out, s.sides[v as usize - 1])
    })
}

/// Sizes of `A`, `S` and `B`; null outputs are skipped.
///
/// # Safety
/// `s` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn cg_separator_sizes(s: *const CgSeparator, a: *mut usize, sep: *mut usize, b: *mut usize) -> CgStatus {
    guard(|| {
        let s = handle(s, "separator")?;
        for (p, v) in [a, sep, b].into_iter().zip(s.sizes) {
            if !p.is_null() {
                p.write(v);
            }
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a handle from this library that was not yet freed.
#[no_mangle]
pub unsafe extern "C" fn cg_separator_free(s: *mut CgSeparator) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Writes a tree decomposition in PACE `.td` format to `path` and its width
/// to `width` when non-null.
///
/// # Safety
/// `g` must be a live handle; `path` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cg_treedec_write(g: *const CgGraph, c: f64, path: *const c_char, width: *mut usize) -> CgStatus {
    guard(|| {
        let g = &handle(g, "graph")?.0;
        check_factor(c)?;
        let path = path_arg(path)?;
        g.ensure_connected()?;
        let p = CloudPartition::build(g, c);
        let m = StructureMinor::build(&p)?;
        let mut out = BufWriter::new(File::create(path).map_err(Error::from)?);
        let summary = write_pace_streaming(&m, &DecomposeOptions::default(), &mut out)?;
        std::io::Write::flush(&mut out).map_err(Error::from)?;
        if !width.is_null() {
            width.write(summary.width);
        }
        Ok(())
    })
}
