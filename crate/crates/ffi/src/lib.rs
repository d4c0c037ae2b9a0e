//! C ABI over the `mapgen` library.
//!
//! Graphs and results are opaque handles created and released through this
//! interface. Every fallible call returns a [`MapgenStatus`]; on failure the
//! message is available from [`mapgen_last_error_message`] on the same
//! thread until the next failing call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mapgen::automorphism::compute_automorphism_group_capped;
use mapgen::embedder::SearchTarget;
use mapgen::run::{process_graph, InputSource, RunConfig, RunMode};
use mapgen::{total_embedding_count, Error, Graph};

/// Outcome of a call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapgenStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Malformed text input.
    Parse = 2,
    /// An argument outside the domain of the operation.
    Domain = 3,
    /// A configured cap was exceeded.
    Resource = 4,
    /// A precondition of the operation was broken.
    Contract = 5,
    /// A bug in the library, including caught panics.
    Internal = 6,
}

/// Values accepted for the `mode` argument of [`mapgen_enumerate`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapgenMode {
    Final = 0,
    Incremental = 1,
    List = 2,
    Exhaustive = 3,
}

/// Values accepted for the `target_kind` argument of [`mapgen_enumerate`].
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapgenTargetKind {
    Genus = 0,
    Faces = 1,
}

/// An undirected simple graph.
pub struct MapgenGraph {
    graph: Graph,
}

/// The maps produced by one enumeration, as rotation-code records.
pub struct MapgenResult {
    records: Vec<CString>,
    nodes_visited: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn status_of(err: &Error) -> MapgenStatus {
    match err {
        Error::Parse { .. } => MapgenStatus::Parse,
        Error::Domain(_) => MapgenStatus::Domain,
        Error::Resource { .. } => MapgenStatus::Resource,
        Error::Contract(_) => MapgenStatus::Contract,
        Error::Invariant(_) | Error::Io(_) => MapgenStatus::Internal,
    }
}

/// Runs `body`, turning errors and panics into status codes.
fn guard(body: impl FnOnce() -> Result<(), Error>) -> MapgenStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => MapgenStatus::Ok,
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".to_string());
            MapgenStatus::Internal
        }
    }
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mapgen_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(text) => text.as_ptr(),
        None => ptr::null(),
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn mapgen_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses one graph6 record into a new graph handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mapgen_graph_from_graph6(
    text: *const c_char,
    out: *mut *mut MapgenGraph,
) -> MapgenStatus {
    if text.is_null() || out.is_null() {
        set_error("text or out is null".into());
        return MapgenStatus::NullPointer;
    }
    guard(|| {
        let bytes = CStr::from_ptr(text).to_bytes();
        let graph = mapgen::graph::parse_graph6(bytes)?;
        *out = Box::into_raw(Box::new(MapgenGraph { graph }));
        Ok(())
    })
}

/// Builds a graph on `n` vertices from `edge_count` pairs of 0-based
/// endpoints stored consecutively in `edges`.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (it may be null
/// when `edge_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn mapgen_graph_from_edges(
    n: usize,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut MapgenGraph,
) -> MapgenStatus {
    if out.is_null() || (edges.is_null() && edge_count > 0) {
        set_error("edges or out is null".into());
        return MapgenStatus::NullPointer;
    }
    guard(|| {
        let raw: &[u32] = if edge_count == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let pairs: Vec<(usize, usize)> = raw
            .chunks_exact(2)
            .map(|p| (p[0] as usize, p[1] as usize))
            .collect();
        let graph = Graph::from_edges(n, &pairs)?;
        *out = Box::into_raw(Box::new(MapgenGraph { graph }));
        Ok(())
    })
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `graph` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mapgen_graph_free(graph: *mut MapgenGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mapgen_graph_order(graph: *const MapgenGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.order())
}

/// Number of edges, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mapgen_graph_size(graph: *const MapgenGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.graph.size())
}

/// Order of the automorphism group, failing with `RESOURCE` above `cap`.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mapgen_automorphism_count(
    graph: *const MapgenGraph,
    cap: u64,
    out: *mut u64,
) -> MapgenStatus {
    let (Some(g), false) = (graph.as_ref(), out.is_null()) else {
        set_error("graph or out is null".into());
        return MapgenStatus::NullPointer;
    };
    guard(|| {
        let group = compute_automorphism_group_capped(&g.graph, cap)?;
        *out = group.order() as u64;
        Ok(())
    })
}

/// Number of rotation systems up to mirror image, as a decimal string to be
/// released with [`mapgen_string_free`].
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mapgen_total_embedding_count(
    graph: *const MapgenGraph,
    out: *mut *mut c_char,
) -> MapgenStatus {
    let (Some(g), false) = (graph.as_ref(), out.is_null()) else {
        set_error("graph or out is null".into());
        return MapgenStatus::NullPointer;
    };
    guard(|| {
        let count = total_embedding_count(&g.graph)?;
        let text = CString::new(count.to_string()).expect("digits only");
        *out = text.into_raw();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `text` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mapgen_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

/// Enumerates the maps of a connected graph meeting the target, one per
/// isomorphism class. `limit` 0 means no limit.
///
/// # Safety
/// `graph` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn mapgen_enumerate(
    graph: *const MapgenGraph,
    target_kind: u32,
    target_value: u32,
    mode: u32,
    limit: u64,
    out: *mut *mut MapgenResult,
) -> MapgenStatus {
    let (Some(g), false) = (graph.as_ref(), out.is_null()) else {
        set_error("graph or out is null".into());
        return MapgenStatus::NullPointer;
    };
    guard(|| {
        let target = match target_kind {
            0 => SearchTarget::Genus(target_value as usize),
            1 => SearchTarget::Faces(target_value as usize),
            other => return Err(Error::Domain(format!("unknown target kind {other}"))),
        };
        let mode = match mode {
            0 => RunMode::Final,
            1 => RunMode::Incremental,
            2 => RunMode::List,
            3 => RunMode::Exhaustive,
            other => return Err(Error::Domain(format!("unknown mode {other}"))),
        };
        let mut config = RunConfig::new(target, InputSource::Graphs(Vec::new()));
        config.mode = mode;
        let outcome = process_graph(&g.graph, &config, (limit > 0).then_some(limit))?;
        let records = outcome
            .records
            .split_terminator("\n\n")
            .map(|r| CString::new(format!("{r}\n")).expect("records are text"))
            .collect();
        *out = Box::into_raw(Box::new(MapgenResult {
            records,
            nodes_visited: outcome.nodes_visited,
        }));
        Ok(())
    })
}

/// Number of maps in a result, or 0 for a null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mapgen_result_count(result: *const MapgenResult) -> usize {
    result.as_ref().map_or(0, |r| r.records.len())
}

/// Search nodes visited, or 0 for a null handle.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mapgen_result_nodes_visited(result: *const MapgenResult) -> u64 {
    result.as_ref().map_or(0, |r| r.nodes_visited)
}

/// Rotation-code record `index` (1-based labels, one line per vertex), or
/// null when out of range. Owned by the result.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mapgen_result_record(
    result: *const MapgenResult,
    index: usize,
) -> *const c_char {
    match result.as_ref().and_then(|r| r.records.get(index)) {
        Some(text) => text.as_ptr(),
        None => ptr::null(),
    }
}

/// Releases a result handle. Null is ignored.
///
/// # Safety
/// `result` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mapgen_result_free(result: *mut MapgenResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}
