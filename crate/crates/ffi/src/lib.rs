//! C ABI over the `kclique` library.
//!
//! Graphs are opaque heap handles created by `kc_graph_load` or
//! `kc_graph_from_edges` and released with `kc_graph_free`. Every fallible
//! call returns a [`KcStatus`]; on failure a description is available from
//! `kc_last_error_message` on the same thread until the next call. Enum-like
//! configuration fields are plain integers so that C callers cannot produce
//! invalid Rust enum values; they are checked on entry.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kclique::{
    brute_force_count, count_cliques, load_graph, CountConfig, CountError, IngestError, OracleError, OrderingKind,
    PruneMode, Schedule, Strategy, UndirectedGraph, VertexId,
};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Io = 3,
    Parse = 4,
    Format = 5,
    Overflow = 6,
    OracleGuard = 7,
    Panic = 8,
}

/// Values for `KcConfig::ordering`.
#[repr(C)]
pub enum KcOrdering {
    Core = 0,
    Degree = 1,
}

/// Values for `KcConfig::strategy`.
#[repr(C)]
pub enum KcStrategy {
    Baseline = 0,
    Citron = 1,
}

/// Values for `KcConfig::schedule`.
#[repr(C)]
pub enum KcSchedule {
    Static = 0,
    Cyclic = 1,
    Dynamic = 2,
}

/// Values for `KcConfig::prune`.
#[repr(C)]
pub enum KcPrune {
    Off = 0,
    Tight = 1,
    Paper = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct KcConfig {
    pub k: u32,
    /// A `KcOrdering` value.
    pub ordering: u32,
    /// A `KcStrategy` value.
    pub strategy: u32,
    /// Worker threads; 0 uses every available core.
    pub workers: u32,
    /// A `KcSchedule` value.
    pub schedule: u32,
    /// Chunk size for `KC_SCHEDULE_DYNAMIC`.
    pub chunk: u32,
    /// A `KcPrune` value.
    pub prune: u32,
    /// Nonzero to count array accesses.
    pub instrument: u8,
}

/// Statistics of one `kc_count` call. Counters that are unavailable hold
/// `UINT64_MAX`.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct KcStats {
    pub ordering_seconds: f64,
    pub counting_seconds: f64,
    pub total_seconds: f64,
    pub array_accesses: u64,
    pub max_subgraph_bytes: u64,
    pub max_out_degree: u64,
    pub work_model: u64,
    pub load_imbalance: f64,
}

/// Opaque graph handle.
pub struct KcGraph {
    graph: UndirectedGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn fail(status: KcStatus, message: impl Into<String>) -> KcStatus {
    set_error(message.into());
    status
}

/// Clears the previous error, runs `f`, and converts a panic into
/// `KC_STATUS_PANIC`.
fn guard(f: impl FnOnce() -> KcStatus) -> KcStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(KcStatus::Panic, format!("internal panic: {message}"))
        }
    }
}

fn ingest_status(e: &IngestError) -> KcStatus {
    match e {
        IngestError::Io(_) => KcStatus::Io,
        IngestError::Parse { .. } => KcStatus::Parse,
        IngestError::Format(_) => KcStatus::Format,
    }
}

fn to_config(c: &KcConfig) -> Result<CountConfig, String> {
    let ordering = match c.ordering {
        0 => OrderingKind::Core,
        1 => OrderingKind::Degree,
        v => return Err(format!("unknown ordering {v}")),
    };
    let strategy = match c.strategy {
        0 => Strategy::Baseline,
        1 => Strategy::Citron,
        v => return Err(format!("unknown strategy {v}")),
    };
    let schedule = match c.schedule {
        0 => Schedule::Static,
        1 => Schedule::Cyclic,
        2 => Schedule::Dynamic(c.chunk as usize),
        v => return Err(format!("unknown schedule {v}")),
    };
    let prune = match c.prune {
        0 => PruneMode::Off,
        1 => PruneMode::Tight,
        2 => PruneMode::Paper,
        v => return Err(format!("unknown prune mode {v}")),
    };
    let defaults = CountConfig::default();
    let cfg = CountConfig {
        k: c.k as usize,
        ordering,
        strategy,
        workers: if c.workers == 0 { defaults.workers } else { c.workers as usize },
        schedule,
        prune,
        instrument: c.instrument != 0,
    };
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

/// The library defaults: k = 3, degree ordering, compact subgraphs, every
/// core, dynamic schedule with chunk 64, tight pruning, no instrumentation.
#[no_mangle]
pub extern "C" fn kc_config_default() -> KcConfig {
    KcConfig {
        k: 3,
        ordering: KcOrdering::Degree as u32,
        strategy: KcStrategy::Citron as u32,
        workers: 0,
        schedule: KcSchedule::Dynamic as u32,
        chunk: 64,
        prune: KcPrune::Tight as u32,
        instrument: 0,
    }
}

/// Loads a text edge list, or a `.csrbin` cache by extension.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn kc_graph_load(path: *const c_char, out: *mut *mut KcGraph) -> KcStatus {
    guard(|| {
        if path.is_null() || out.is_null() {
            return fail(KcStatus::NullPointer, "path and out must not be null");
        }
        let Ok(path) = CStr::from_ptr(path).to_str() else {
            return fail(KcStatus::InvalidArgument, "path is not valid UTF-8");
        };
        match load_graph(path) {
            Ok(graph) => {
                *out = Box::into_raw(Box::new(KcGraph { graph }));
                KcStatus::Ok
            }
            Err(e) => fail(ingest_status(&e), format!("{path}: {e}")),
        }
    })
}

/// Builds a graph from `num_edges` pairs stored flat in `edges`
/// (`u0, v0, u1, v1, ...`). Self-loops and duplicates are dropped.
///
/// # Safety
/// `edges` must point to `2 * num_edges` readable values (it may be null
/// when `num_edges` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kc_graph_from_edges(
    num_vertices: u32,
    edges: *const u32,
    num_edges: usize,
    out: *mut *mut KcGraph,
) -> KcStatus {
    guard(|| {
        if out.is_null() || (edges.is_null() && num_edges > 0) {
            return fail(KcStatus::NullPointer, "edges and out must not be null");
        }
        let Some(len) = num_edges.checked_mul(2) else {
            return fail(KcStatus::InvalidArgument, "edge count too large");
        };
        let flat: &[u32] = if len == 0 { &[] } else { std::slice::from_raw_parts(edges, len) };
        let pairs: Vec<(VertexId, VertexId)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        if let Some(&(u, v)) = pairs.iter().find(|&&(u, v)| u.max(v) >= num_vertices) {
            return fail(
                KcStatus::InvalidArgument,
                format!("edge ({u}, {v}) out of range for {num_vertices} vertices"),
            );
        }
        let graph = UndirectedGraph::from_edges(num_vertices as usize, &pairs);
        *out = Box::into_raw(Box::new(KcGraph { graph }));
        KcStatus::Ok
    })
}

/// Releases a graph. Null is ignored.
///
/// # Safety
/// `graph` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn kc_graph_free(graph: *mut KcGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Vertex count, or 0 for null.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kc_graph_num_vertices(graph: *const KcGraph) -> u64 {
    graph.as_ref().map_or(0, |g| g.graph.num_vertices() as u64)
}

/// Undirected edge count, or 0 for null.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn kc_graph_num_edges(graph: *const KcGraph) -> u64 {
    graph.as_ref().map_or(0, |g| g.graph.num_edges() as u64)
}

/// Counts `config->k`-cliques. `stats` may be null.
///
/// # Safety
/// `graph` must be a live handle; `config` and `count` must be valid
/// pointers; `stats` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn kc_count(
    graph: *const KcGraph,
    config: *const KcConfig,
    count: *mut u64,
    stats: *mut KcStats,
) -> KcStatus {
    guard(|| {
        let (Some(g), Some(config)) = (graph.as_ref(), config.as_ref()) else {
            return fail(KcStatus::NullPointer, "graph and config must not be null");
        };
        if count.is_null() {
            return fail(KcStatus::NullPointer, "count must not be null");
        }
        let cfg = match to_config(config) {
            Ok(c) => c,
            Err(e) => return fail(KcStatus::InvalidArgument, e),
        };
        match count_cliques(&g.graph, &cfg) {
            Ok((c, s)) => {
                *count = c.get();
                if let Some(out) = stats.as_mut() {
                    *out = KcStats {
                        ordering_seconds: s.ordering_time.as_secs_f64(),
                        counting_seconds: s.counting_time.as_secs_f64(),
                        total_seconds: s.total_time.as_secs_f64(),
                        array_accesses: s.array_accesses.unwrap_or(u64::MAX),
                        max_subgraph_bytes: s.max_subgraph_bytes as u64,
                        max_out_degree: s.max_out_degree as u64,
                        work_model: s.work_model.unwrap_or(u64::MAX),
                        load_imbalance: s.load_imbalance(),
                    };
                }
                KcStatus::Ok
            }
            Err(e @ CountError::Overflow { .. }) => fail(KcStatus::Overflow, e.to_string()),
            Err(e) => fail(KcStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Reference count by exhaustive search; refuses graphs above 10,000
/// vertices with `KC_STATUS_ORACLE_GUARD`.
///
/// # Safety
/// `graph` must be a live handle and `count` writable.
#[no_mangle]
pub unsafe extern "C" fn kc_brute_force_count(graph: *const KcGraph, k: u32, count: *mut u64) -> KcStatus {
    guard(|| {
        let Some(g) = graph.as_ref() else {
            return fail(KcStatus::NullPointer, "graph must not be null");
        };
        if count.is_null() {
            return fail(KcStatus::NullPointer, "count must not be null");
        }
        match brute_force_count(&g.graph, k as usize) {
            Ok(c) => {
                *count = c.get();
                KcStatus::Ok
            }
            Err(e @ OracleError::TooLarge { .. }) => fail(KcStatus::OracleGuard, e.to_string()),
            Err(e @ OracleError::Overflow) => fail(KcStatus::Overflow, e.to_string()),
            Err(e @ OracleError::InvalidK) => fail(KcStatus::InvalidArgument, e.to_string()),
        }
    })
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn kc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |m| m.as_ptr()))
}
