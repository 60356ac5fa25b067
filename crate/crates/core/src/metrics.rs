//! Run statistics and instrumentation.
//!
//! An "array access" is one element read or one element write to an
//! adjacency, offset, label, remap, degree or vertex-set array. Index
//! arithmetic and scalar locals are not counted. Both subgraph strategies
//! report through the same [`Probe`] calls so their totals are comparable.

use std::time::Duration;

use thiserror::Error;

use crate::graph::{Dag, VertexId};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("work model overflowed u64")]
pub struct WorkModelOverflow;

/// Sink for instrumentation events on the counting hot path.
pub trait Probe {
    /// `n` array element reads or writes.
    fn access(&mut self, n: u64);
    /// `n` inner-loop iterations.
    fn iterations(&mut self, n: u64);
}

/// Counts iterations only; access events compile away.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Iterations(pub u64);

impl Probe for Iterations {
    #[inline(always)]
    fn access(&mut self, _n: u64) {}

    #[inline(always)]
    fn iterations(&mut self, n: u64) {
        self.0 += n;
    }
}

/// Counts both accesses and iterations.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq)]
pub struct Tally {
    pub accesses: u64,
    pub iterations: u64,
}

impl Probe for Tally {
    #[inline(always)]
    fn access(&mut self, n: u64) {
        self.accesses += n;
    }

    #[inline(always)]
    fn iterations(&mut self, n: u64) {
        self.iterations += n;
    }
}

/// What one counting run measured.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunStats {
    pub ordering_time: Duration,
    pub counting_time: Duration,
    pub total_time: Duration,
    /// Accesses while building first-level subgraphs, summed over all
    /// vertices. `None` unless the run was instrumented.
    pub array_accesses: Option<u64>,
    /// Footprint of the largest first-level subgraph structure.
    pub max_subgraph_bytes: usize,
    pub max_out_degree: usize,
    /// `None` if the model overflowed.
    pub work_model: Option<u64>,
    /// Subgraph-construction inner-loop iterations per worker.
    pub per_worker_iterations: Vec<u64>,
}

impl RunStats {
    pub fn load_imbalance(&self) -> f64 {
        load_imbalance(&self.per_worker_iterations)
    }
}

/// `Σ_u d→(u) · Σ_{v ∈ N→(u)} d→(v)` over DAG out-degrees.
pub fn work_model(dag: &Dag) -> Result<u64, WorkModelOverflow> {
    let mut total = 0u64;
    for u in 0..dag.num_vertices() as VertexId {
        let mut inner = 0u64;
        for &v in dag.out_neighbors(u) {
            inner = inner
                .checked_add(dag.out_degree_unchecked(v) as u64)
                .ok_or(WorkModelOverflow)?;
        }
        total = (dag.out_degree_unchecked(u) as u64)
            .checked_mul(inner)
            .and_then(|t| total.checked_add(t))
            .ok_or(WorkModelOverflow)?;
    }
    Ok(total)
}

/// Population standard deviation over the mean; 0 for an empty or all-zero
/// input.
pub fn load_imbalance(per_worker: &[u64]) -> f64 {
    if per_worker.is_empty() {
        return 0.0;
    }
    let n = per_worker.len() as f64;
    let mean = per_worker.iter().map(|&x| x as f64).sum::<f64>() / n;
    if mean == 0.0 {
        return 0.0;
    }
    let var = per_worker
        .iter()
        .map(|&x| {
            let d = x as f64 - mean;
            d * d
        })
        .sum::<f64>()
        / n;
    var.sqrt() / mean
}
