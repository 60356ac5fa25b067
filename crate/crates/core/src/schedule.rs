//! Vertex-parallel loops over `[0, n)` on scoped worker threads.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::thread;

use crate::graph::VertexId;

/// How top-level vertices are assigned to workers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    /// One contiguous block of vertices per worker.
    Static,
    /// Round-robin with chunk size 1: worker `w` takes `w, w + W, w + 2W, ...`.
    Cyclic,
    /// Workers claim chunks of the given size from a shared cursor.
    Dynamic(usize),
}

impl Default for Schedule {
    fn default() -> Self {
        Schedule::Dynamic(64)
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::Static => f.write_str("static"),
            Schedule::Cyclic => f.write_str("cyclic"),
            Schedule::Dynamic(c) => write!(f, "dynamic:{c}"),
        }
    }
}

impl FromStr for Schedule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "static" => Ok(Schedule::Static),
            "cyclic" => Ok(Schedule::Cyclic),
            "dynamic" => Ok(Schedule::default()),
            _ => {
                let chunk = s
                    .strip_prefix("dynamic:")
                    .ok_or_else(|| format!("unknown schedule {s:?}"))?;
                match chunk.parse::<usize>() {
                    Ok(c) if c >= 1 => Ok(Schedule::Dynamic(c)),
                    _ => Err(format!("dynamic chunk must be a positive integer, got {chunk:?}")),
                }
            }
        }
    }
}

pub fn available_workers() -> usize {
    thread::available_parallelism().map_or(1, |n| n.get())
}

/// Runs `body` for every vertex in `[0, n)` on `workers` threads. Each worker
/// owns the state produced by `init(worker_index)`; the states are returned
/// in worker order. `body` returning `false` stops all workers early.
pub(crate) fn for_each_vertex<S, I, F>(
    n: usize,
    workers: usize,
    schedule: Schedule,
    init: I,
    body: F,
) -> Vec<S>
where
    S: Send,
    I: Fn(usize) -> S + Sync,
    F: Fn(&mut S, VertexId) -> bool + Sync,
{
    let workers = workers.max(1);
    let stop = AtomicBool::new(false);
    let cursor = AtomicUsize::new(0);
    let run = |w: usize| {
        let mut state = init(w);
        let mut visit = |u: usize| {
            if !body(&mut state, u as VertexId) {
                stop.store(true, Ordering::Relaxed);
            }
            !stop.load(Ordering::Relaxed)
        };
        match schedule {
            Schedule::Static => {
                let (lo, hi) = (n * w / workers, n * (w + 1) / workers);
                for u in lo..hi {
                    if !visit(u) {
                        break;
                    }
                }
            }
            Schedule::Cyclic => {
                for u in (w..n).step_by(workers) {
                    if !visit(u) {
                        break;
                    }
                }
            }
            Schedule::Dynamic(chunk) => {
                let chunk = chunk.max(1);
                'claim: loop {
                    let lo = cursor.fetch_add(chunk, Ordering::Relaxed);
                    if lo >= n {
                        break;
                    }
                    for u in lo..(lo + chunk).min(n) {
                        if !visit(u) {
                            break 'claim;
                        }
                    }
                }
            }
        }
        state
    };
    if workers == 1 {
        return vec![run(0)];
    }
    thread::scope(|s| {
        let handles: Vec<_> = (0..workers).map(|w| s.spawn(move || run(w))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

/// Splits `[0, n)` into at most `parts` contiguous vertex ranges carrying
/// roughly equal numbers of CSR entries. Returns `parts + 1` boundaries.
pub(crate) fn balanced_boundaries(offsets: &[u64], parts: usize) -> Vec<usize> {
    let n = offsets.len().saturating_sub(1);
    let total = offsets.last().copied().unwrap_or(0);
    let parts = parts.max(1);
    let mut bounds = Vec::with_capacity(parts + 1);
    bounds.push(0);
    // Each vertex weighs its entry count plus one, so the prefix weight of
    // vertex i is offsets[i] + i and isolated vertices still spread out.
    let (mut lo, hi) = (0usize, n);
    for p in 1..parts {
        let target = (total + n as u64) * p as u64 / parts as u64;
        let (mut a, mut b) = (lo, hi);
        while a < b {
            let mid = a + (b - a) / 2;
            if offsets[mid] + (mid as u64) < target {
                a = mid + 1;
            } else {
                b = mid;
            }
        }
        bounds.push(a);
        lo = a;
    }
    bounds.push(n);
    bounds
}
