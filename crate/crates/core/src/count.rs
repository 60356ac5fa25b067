//! The recursive k-clique counter.
//!
//! Every vertex `u` of the DAG roots one independent task: build the
//! subgraph induced by `u`'s out-neighbors, then repeatedly descend into the
//! subgraph induced by each member's out-neighbors until two clique vertices
//! remain to be chosen, where each remaining edge closes one clique. Tasks
//! are spread over worker threads; each worker keeps private buffers and a
//! private partial count.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use crate::graph::{Dag, UndirectedGraph, VertexId};
use crate::metrics::{work_model, Iterations, Probe, RunStats, Tally};
use crate::ordering::{directionalize_with, OrderingKind};
use crate::schedule::{available_workers, for_each_vertex, Schedule};
use crate::subgraph::{CsrLevel, LabelWorkspace, Strategy};

/// Largest supported clique size; labels are stored in a byte.
pub const MAX_K: usize = u8::MAX as usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    /// `partial` is true when counting stopped before every vertex was
    /// processed.
    #[error("clique count overflowed u64 ({})", if *.partial { "counting stopped early" } else { "while combining worker totals" })]
    Overflow { partial: bool },
}

/// When to skip a subgraph that cannot contain the clique still being built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PruneMode {
    Off,
    /// Skip a subgraph entering level `l` with fewer than `l` vertices.
    #[default]
    Tight,
    /// Skip only below `l - 2` vertices.
    Paper,
}

impl PruneMode {
    /// Whether a subgraph of `n` vertices about to be processed at `level`
    /// can be skipped without changing the count.
    #[inline]
    pub fn skip(self, level: usize, n: usize) -> bool {
        match self {
            PruneMode::Off => false,
            PruneMode::Tight => n < level,
            PruneMode::Paper => n < level.saturating_sub(2),
        }
    }
}

impl fmt::Display for PruneMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PruneMode::Off => "off",
            PruneMode::Tight => "on",
            PruneMode::Paper => "paper",
        })
    }
}

impl FromStr for PruneMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "off" => Ok(PruneMode::Off),
            "on" => Ok(PruneMode::Tight),
            "paper" => Ok(PruneMode::Paper),
            _ => Err(format!("unknown prune mode {s:?} (expected on, off or paper)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountConfig {
    pub k: usize,
    pub ordering: OrderingKind,
    pub strategy: Strategy,
    pub workers: usize,
    pub schedule: Schedule,
    pub prune: PruneMode,
    /// Count array accesses while building first-level subgraphs.
    pub instrument: bool,
}

impl Default for CountConfig {
    fn default() -> Self {
        Self {
            k: 3,
            ordering: OrderingKind::default(),
            strategy: Strategy::default(),
            workers: available_workers(),
            schedule: Schedule::default(),
            prune: PruneMode::default(),
            instrument: false,
        }
    }
}

impl CountConfig {
    pub fn new(k: usize) -> Self {
        Self { k, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), CountError> {
        if !(3..=MAX_K).contains(&self.k) {
            return Err(CountError::InvalidConfig(format!(
                "k must lie in [3, {MAX_K}], got {}",
                self.k
            )));
        }
        if self.workers == 0 {
            return Err(CountError::InvalidConfig("workers must be at least 1".into()));
        }
        if self.schedule == Schedule::Dynamic(0) {
            return Err(CountError::InvalidConfig("dynamic chunk must be at least 1".into()));
        }
        Ok(())
    }
}

/// Number of k-cliques.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CliqueCount(pub u64);

impl CliqueCount {
    pub fn get(self) -> u64 {
        self.0
    }

    pub fn checked_add(self, other: CliqueCount) -> Option<CliqueCount> {
        self.0.checked_add(other.0).map(CliqueCount)
    }
}

impl fmt::Display for CliqueCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Sum of per-worker partial counts.
pub fn aggregate(partials: &[u64]) -> Result<CliqueCount, CountError> {
    partials
        .iter()
        .try_fold(CliqueCount(0), |acc, &p| acc.checked_add(CliqueCount(p)))
        .ok_or(CountError::Overflow { partial: false })
}

/// Orients `g` per `cfg.ordering` and counts its `cfg.k`-cliques.
pub fn count_cliques(g: &UndirectedGraph, cfg: &CountConfig) -> Result<(CliqueCount, RunStats), CountError> {
    cfg.validate()?;
    let start = Instant::now();
    let dag = directionalize_with(g, cfg.ordering, cfg.workers);
    let ordering_time = start.elapsed();
    let (count, mut stats) = count_dag(&dag, cfg)?;
    stats.total_time = start.elapsed();
    stats.ordering_time = ordering_time;
    Ok((count, stats))
}

/// Counts the `cfg.k`-cliques of an already oriented graph. `cfg.ordering`
/// is ignored; the reported ordering time is zero.
pub fn count_dag(dag: &Dag, cfg: &CountConfig) -> Result<(CliqueCount, RunStats), CountError> {
    cfg.validate()?;
    let c = dag.max_out_degree();
    let start = Instant::now();
    let states = for_each_vertex(
        dag.num_vertices(),
        cfg.workers,
        cfg.schedule,
        |_| Worker::new(dag, c, cfg),
        |w, u| w.visit(dag, u, cfg),
    );
    let counting_time = start.elapsed();

    if states.iter().any(|w| w.overflowed) {
        return Err(CountError::Overflow { partial: true });
    }
    let partials: Vec<u64> = states.iter().map(|w| w.count).collect();
    let count = aggregate(&partials)?;

    let stats = RunStats {
        ordering_time: Default::default(),
        counting_time,
        total_time: counting_time,
        array_accesses: cfg.instrument.then(|| states.iter().map(|w| w.tally.accesses).sum()),
        max_subgraph_bytes: states.iter().map(|w| w.max_bytes).max().unwrap_or(0),
        max_out_degree: c,
        work_model: work_model(dag).ok(),
        per_worker_iterations: states
            .iter()
            .map(|w| w.deep.0 + w.first.0 + w.tally.iterations)
            .collect(),
    };
    Ok((count, stats))
}

enum Buffers {
    Citron {
        /// Indexed by level; entries below 3 are unused.
        levels: Vec<CsrLevel>,
        degrees: Vec<u32>,
    },
    Baseline(LabelWorkspace),
}

struct Worker {
    buffers: Buffers,
    count: u64,
    overflowed: bool,
    max_bytes: usize,
    /// Probe for first-level builds when not instrumented.
    first: Iterations,
    /// Probe for first-level builds when instrumented.
    tally: Tally,
    /// Probe for all deeper levels.
    deep: Iterations,
}

impl Worker {
    fn new(dag: &Dag, c: usize, cfg: &CountConfig) -> Self {
        let (buffers, max_bytes) = match cfg.strategy {
            Strategy::Citron => {
                let levels = (0..cfg.k)
                    .map(|l| {
                        if l >= 3 {
                            CsrLevel::for_max_out_degree(c)
                        } else {
                            CsrLevel::with_capacity(0, 0)
                        }
                    })
                    .collect();
                let b = Buffers::Citron {
                    levels,
                    degrees: vec![0; c],
                };
                (b, 0)
            }
            Strategy::Baseline => {
                let n = dag.num_vertices();
                let lw = LabelWorkspace::new(n, c, cfg.k as u8);
                let bytes = if n == 0 { 0 } else { LabelWorkspace::first_level_bytes(n, c) };
                (Buffers::Baseline(lw), bytes)
            }
        };
        Self {
            buffers,
            count: 0,
            overflowed: false,
            max_bytes,
            first: Iterations::default(),
            tally: Tally::default(),
            deep: Iterations::default(),
        }
    }

    fn visit(&mut self, dag: &Dag, u: VertexId, cfg: &CountConfig) -> bool {
        let found = if cfg.instrument {
            self.run(dag, u, cfg, Probes::Tally)
        } else {
            self.run(dag, u, cfg, Probes::Plain)
        };
        match found.and_then(|f| self.count.checked_add(f)) {
            Some(total) => {
                self.count = total;
                true
            }
            None => {
                self.overflowed = true;
                false
            }
        }
    }

    fn run(&mut self, dag: &Dag, u: VertexId, cfg: &CountConfig, probes: Probes) -> Option<u64> {
        let k = cfg.k;
        if cfg.prune.skip(k - 1, dag.out_degree_unchecked(u)) {
            return Some(0);
        }
        let Worker {
            buffers,
            max_bytes,
            first,
            tally,
            deep,
            ..
        } = self;
        match buffers {
            Buffers::Citron { levels, degrees } => match probes {
                Probes::Plain => citron_root(dag, u, k, cfg.prune, levels, degrees, max_bytes, first, deep),
                Probes::Tally => citron_root(dag, u, k, cfg.prune, levels, degrees, max_bytes, tally, deep),
            },
            Buffers::Baseline(lw) => {
                match probes {
                    Probes::Plain => lw.build_first_level(dag, u, first),
                    Probes::Tally => lw.build_first_level(dag, u, tally),
                }
                recurse_baseline(lw, k - 1, cfg.prune, deep)
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Probes {
    Plain,
    Tally,
}

#[allow(clippy::too_many_arguments)]
fn citron_root<P: Probe>(
    dag: &Dag,
    u: VertexId,
    k: usize,
    prune: PruneMode,
    levels: &mut [CsrLevel],
    degrees: &mut [u32],
    max_bytes: &mut usize,
    first: &mut P,
    deep: &mut Iterations,
) -> Option<u64> {
    if k == 3 {
        // Only the degrees of the first-level subgraph are needed.
        let degs = CsrLevel::child_degrees(dag, u as usize, degrees, first);
        *max_bytes = (*max_bytes).max(4 * degs.len());
        return Some(sum(degs));
    }
    levels[k - 1].build_from(dag, u as usize, first);
    *max_bytes = (*max_bytes).max(levels[k - 1].bytes_in_use());
    recurse_citron(levels, k - 1, prune, degrees, deep)
}

/// Counts the cliques completed inside the subgraph stored at
/// `levels[level]`, with `level >= 3` vertices still to choose.
fn recurse_citron(
    levels: &mut [CsrLevel],
    level: usize,
    prune: PruneMode,
    degrees: &mut [u32],
    probe: &mut Iterations,
) -> Option<u64> {
    let (below, rest) = levels.split_at_mut(level);
    let here = &rest[0];
    let mut total = 0u64;
    for i in 0..here.len() {
        if prune.skip(level - 1, here.degrees()[i] as usize) {
            continue;
        }
        let found = if level == 3 {
            sum(CsrLevel::child_degrees(here, i, degrees, probe))
        } else {
            below[level - 1].build_from(here, i, probe);
            recurse_citron(below, level - 1, prune, degrees, probe)?
        };
        total = total.checked_add(found)?;
    }
    Some(total)
}

/// Same as [`recurse_citron`] over the label workspace; `level` may be 2.
fn recurse_baseline(lw: &mut LabelWorkspace, level: usize, prune: PruneMode, probe: &mut Iterations) -> Option<u64> {
    if level == 2 {
        return Some(lw.degree_sum(2));
    }
    let mut total = 0u64;
    for idx in 0..lw.len(level) {
        let v = lw.nodes(level)[idx];
        if prune.skip(level - 1, lw.degrees(level)[v as usize] as usize) {
            continue;
        }
        lw.build_next_level(level, v, probe);
        let found = recurse_baseline(lw, level - 1, prune, probe);
        lw.restore(level);
        total = total.checked_add(found?)?;
    }
    Some(total)
}

#[inline]
fn sum(degrees: &[u32]) -> u64 {
    degrees.iter().map(|&d| d as u64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::example;

    fn all_configs(k: usize) -> impl Iterator<Item = CountConfig> {
        [OrderingKind::Core, OrderingKind::Degree].into_iter().flat_map(move |ordering| {
            [Strategy::Baseline, Strategy::Citron].into_iter().flat_map(move |strategy| {
                [PruneMode::Off, PruneMode::Tight, PruneMode::Paper]
                    .into_iter()
                    .map(move |prune| CountConfig {
                        k,
                        ordering,
                        strategy,
                        prune,
                        workers: 2,
                        ..CountConfig::default()
                    })
            })
        })
    }

    fn complete(n: u32) -> UndirectedGraph {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        UndirectedGraph::from_edges(n as usize, &edges)
    }

    #[test]
    fn example_counts_under_every_config() {
        let g = example();
        for (k, expected) in [(3, 5), (4, 1), (5, 0), (6, 0)] {
            for cfg in all_configs(k) {
                let (count, _) = count_cliques(&g, &cfg).unwrap();
                assert_eq!(count.get(), expected, "k={k} {cfg:?}");
            }
        }
    }

    #[test]
    fn complete_graph_counts() {
        // C(6,4) = 15, C(6,3) = 20, C(7,5) = 21.
        for cfg in all_configs(4) {
            assert_eq!(count_cliques(&complete(6), &cfg).unwrap().0.get(), 15);
        }
        for cfg in all_configs(3) {
            assert_eq!(count_cliques(&complete(6), &cfg).unwrap().0.get(), 20);
        }
        for cfg in all_configs(5) {
            assert_eq!(count_cliques(&complete(7), &cfg).unwrap().0.get(), 21);
        }
    }

    #[test]
    fn prune_thresholds() {
        assert!(PruneMode::Tight.skip(2, 1));
        assert!(PruneMode::Tight.skip(3, 2));
        assert!(!PruneMode::Tight.skip(4, 4));
        assert!(!PruneMode::Off.skip(4, 0));
        assert!(PruneMode::Paper.skip(5, 2));
        assert!(!PruneMode::Paper.skip(5, 3));
        assert!(!PruneMode::Paper.skip(2, 0));
    }

    #[test]
    fn aggregate_sums_and_detects_overflow() {
        assert_eq!(aggregate(&[5, 0, 0]), Ok(CliqueCount(5)));
        assert_eq!(
            aggregate(&[1 << 63, 1 << 63]),
            Err(CountError::Overflow { partial: false })
        );
        assert_eq!(aggregate(&[]), Ok(CliqueCount(0)));
    }

    #[test]
    fn rejects_bad_configs() {
        let g = example();
        for cfg in [
            CountConfig::new(2),
            CountConfig::new(MAX_K + 1),
            CountConfig { workers: 0, ..CountConfig::new(3) },
            CountConfig { schedule: Schedule::Dynamic(0), ..CountConfig::new(3) },
        ] {
            assert!(matches!(count_cliques(&g, &cfg), Err(CountError::InvalidConfig(_))));
        }
    }

    #[test]
    fn stats_are_filled_in() {
        let cfg = CountConfig {
            k: 4,
            workers: 3,
            instrument: true,
            ..CountConfig::default()
        };
        let (_, stats) = count_cliques(&example(), &cfg).unwrap();
        assert_eq!(stats.max_out_degree, 3);
        assert_eq!(stats.work_model, Some(17));
        assert_eq!(stats.per_worker_iterations.len(), 3);
        assert!(stats.array_accesses.unwrap() > 0);
        assert!(stats.total_time >= stats.counting_time);

        let plain = CountConfig { instrument: false, ..cfg };
        assert_eq!(count_cliques(&example(), &plain).unwrap().1.array_accesses, None);
    }

    #[test]
    fn first_level_accesses_favor_citron_on_example() {
        for k in [3, 4, 5] {
            let run = |strategy| {
                let cfg = CountConfig {
                    k,
                    strategy,
                    workers: 1,
                    prune: PruneMode::Off,
                    instrument: true,
                    ..CountConfig::default()
                };
                count_cliques(&example(), &cfg).unwrap().1
            };
            let (b, c) = (run(Strategy::Baseline), run(Strategy::Citron));
            assert!(c.array_accesses < b.array_accesses, "k={k}: {c:?} vs {b:?}");
            assert!(c.max_subgraph_bytes < b.max_subgraph_bytes);
        }
    }

    #[test]
    fn empty_graph() {
        let g = UndirectedGraph::from_edges(0, &[]);
        for cfg in all_configs(3) {
            let cfg = CountConfig { instrument: true, ..cfg };
            let (count, stats) = count_cliques(&g, &cfg).unwrap();
            assert_eq!(count.get(), 0);
            assert_eq!(stats.array_accesses, Some(0));
        }
    }
}
