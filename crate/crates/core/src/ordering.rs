//! Vertex orderings and directionalization.
//!
//! Two orders are supported. The core (degeneracy) order peels a
//! minimum-degree vertex at a time; orienting edges from earlier-removed to
//! later-removed vertices bounds every out-degree by the degeneracy. The
//! degree order compares original degrees with the vertex id as tie breaker
//! and needs no sequential peeling, so the DAG can be built vertex-parallel.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::ops::Range;
use std::str::FromStr;
use std::thread;

use crate::graph::{Dag, GraphError, RankAssignment, UndirectedGraph, VertexId};
use crate::schedule::{available_workers, balanced_boundaries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderingKind {
    Core,
    #[default]
    Degree,
}

impl fmt::Display for OrderingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderingKind::Core => "core",
            OrderingKind::Degree => "degree",
        })
    }
}

impl FromStr for OrderingKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "core" => Ok(OrderingKind::Core),
            "degree" => Ok(OrderingKind::Degree),
            _ => Err(format!("unknown ordering {s:?} (expected core or degree)")),
        }
    }
}

/// Matula–Beck peeling. Vertex removed `i`-th gets rank `i`; among vertices
/// of equal minimum remaining degree the smallest id goes first.
///
/// Remaining degrees live in buckets, each a min-heap of vertex ids with
/// lazy deletion, so a removal costs a heap operation per affected neighbor.
pub fn core_ordering(g: &UndirectedGraph) -> RankAssignment {
    let n = g.num_vertices();
    let mut degree: Vec<u32> = (0..n as VertexId)
        .map(|u| g.degree_unchecked(u) as u32)
        .collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0) as usize;
    let mut buckets: Vec<BinaryHeap<Reverse<VertexId>>> = vec![BinaryHeap::new(); max_degree + 1];
    for (u, &d) in degree.iter().enumerate() {
        buckets[d as usize].push(Reverse(u as VertexId));
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut current = 0usize;
    while order.len() < n {
        let u = loop {
            while buckets[current].is_empty() {
                current += 1;
            }
            let Reverse(u) = buckets[current].pop().unwrap();
            // Entries left behind by a degree decrement are stale.
            if !removed[u as usize] && degree[u as usize] as usize == current {
                break u;
            }
        };
        removed[u as usize] = true;
        order.push(u);
        for &v in g.neighbors(u) {
            if !removed[v as usize] {
                degree[v as usize] -= 1;
                buckets[degree[v as usize] as usize].push(Reverse(v));
            }
        }
        // The minimum remaining degree drops by at most one per removal.
        current = current.saturating_sub(1);
    }
    RankAssignment::from_order(&order).expect("peeling visits every vertex once")
}

/// Ranks by ascending `(degree, id)`.
pub fn degree_ordering(g: &UndirectedGraph) -> RankAssignment {
    let mut order: Vec<VertexId> = (0..g.num_vertices() as VertexId).collect();
    order.sort_unstable_by_key(|&u| (g.degree_unchecked(u), u));
    RankAssignment::from_order(&order).expect("permutation of vertex ids")
}

/// The degree order comparator: `d(u) < d(v)`, or equal degrees and `u < v`.
pub fn degree_rank_less(g: &UndirectedGraph, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
    let du = g.degree(u)?;
    let dv = g.degree(v)?;
    if u == v {
        return Err(GraphError::SameVertex { vertex: u });
    }
    Ok(degree_less(du, u, dv, v))
}

#[inline]
fn degree_less(du: usize, u: VertexId, dv: usize, v: VertexId) -> bool {
    du < dv || (du == dv && u < v)
}

/// Orients `g` under `kind` using every available core.
pub fn directionalize(g: &UndirectedGraph, kind: OrderingKind) -> Dag {
    directionalize_with(g, kind, available_workers())
}

/// Orients `g` under `kind` with `workers` threads for the two construction
/// passes. Core ordering itself is always sequential.
pub fn directionalize_with(g: &UndirectedGraph, kind: OrderingKind, workers: usize) -> Dag {
    match kind {
        OrderingKind::Degree => orient(g, workers, |u, v| {
            degree_less(g.degree_unchecked(u), u, g.degree_unchecked(v), v)
        }),
        OrderingKind::Core => directionalize_by_rank(g, &core_ordering(g), workers),
    }
}

/// Keeps `u -> v` exactly when `rank(u) < rank(v)`.
pub fn directionalize_by_rank(g: &UndirectedGraph, ranks: &RankAssignment, workers: usize) -> Dag {
    assert_eq!(ranks.len(), g.num_vertices(), "rank assignment size mismatch");
    orient(g, workers, |u, v| ranks.rank(u) < ranks.rank(v))
}

/// Two-pass DAG construction. Pass one counts retained out-edges per vertex,
/// a prefix sum turns the counts into offsets, and pass two copies the
/// retained neighbors. Source lists are sorted, so output lists are too.
fn orient<F>(g: &UndirectedGraph, workers: usize, keep: F) -> Dag
where
    F: Fn(VertexId, VertexId) -> bool + Sync,
{
    let n = g.num_vertices();
    let bounds = balanced_boundaries(g.offsets(), workers.max(1).min(n.max(1)));
    let keep = &keep;

    let mut counts = vec![0u64; n];
    run_parts(split_by_bounds(&mut counts, &bounds, |b| b as u64), |range, part| {
        for (u, c) in range.zip(part.iter_mut()) {
            let u = u as VertexId;
            *c = g.neighbors(u).iter().filter(|&&v| keep(u, v)).count() as u64;
        }
    });

    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0u64);
    let mut total = 0u64;
    for c in counts {
        total += c;
        offsets.push(total);
    }

    let mut out = vec![0 as VertexId; total as usize];
    run_parts(split_by_bounds(&mut out, &bounds, |b| offsets[b]), |range, part| {
        let mut pos = 0usize;
        for u in range {
            let u = u as VertexId;
            for &v in g.neighbors(u) {
                if keep(u, v) {
                    part[pos] = v;
                    pos += 1;
                }
            }
        }
        debug_assert_eq!(pos, part.len());
    });

    Dag::from_csr_unchecked(n, offsets, out)
}

/// Splits `data` into one mutable slice per non-empty vertex range;
/// `position` maps a vertex boundary to an index into `data`.
fn split_by_bounds<'a, T>(
    data: &'a mut [T],
    bounds: &[usize],
    position: impl Fn(usize) -> u64,
) -> Vec<(Range<usize>, &'a mut [T])> {
    let mut parts = Vec::with_capacity(bounds.len());
    let mut rest = data;
    for w in bounds.windows(2) {
        let len = (position(w[1]) - position(w[0])) as usize;
        let (head, tail) = rest.split_at_mut(len);
        if w[1] > w[0] {
            parts.push((w[0]..w[1], head));
        }
        rest = tail;
    }
    parts
}

fn run_parts<T: Send>(parts: Vec<(Range<usize>, &mut [T])>, f: impl Fn(Range<usize>, &mut [T]) + Sync) {
    if parts.len() <= 1 {
        for (range, part) in parts {
            f(range, part);
        }
        return;
    }
    let f = &f;
    thread::scope(|s| {
        for (range, part) in parts {
            s.spawn(move || f(range, part));
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::example;

    fn out_lists(d: &Dag) -> Vec<Vec<VertexId>> {
        (0..d.num_vertices() as VertexId)
            .map(|u| d.out_neighbors(u).to_vec())
            .collect()
    }

    #[test]
    fn example_core_removal_order() {
        let r = core_ordering(&example());
        assert_eq!(r.order(), vec![2, 5, 6, 0, 1, 3, 4]);
        assert_eq!(r.as_slice(), &[3, 4, 0, 5, 6, 1, 2]);
    }

    #[test]
    fn edgeless_core_order_is_by_id() {
        let g = UndirectedGraph::from_edges(3, &[]);
        assert_eq!(core_ordering(&g).order(), vec![0, 1, 2]);
        assert_eq!(core_ordering(&UndirectedGraph::default()).len(), 0);
    }

    #[test]
    fn complete_graph_has_out_degree_three() {
        let k4: Vec<_> = (0..4u32)
            .flat_map(|u| (u + 1..4).map(move |v| (u, v)))
            .collect();
        let g = UndirectedGraph::from_edges(4, &k4);
        for kind in [OrderingKind::Core, OrderingKind::Degree] {
            assert_eq!(directionalize_with(&g, kind, 2).max_out_degree(), 3);
        }
    }

    #[test]
    fn example_comparator() {
        let g = example();
        assert!(degree_rank_less(&g, 0, 1).unwrap());
        assert!(degree_rank_less(&g, 0, 3).unwrap());
        assert!(!degree_rank_less(&g, 5, 6).unwrap());
        assert!(degree_rank_less(&g, 6, 5).unwrap());
        assert!(matches!(
            degree_rank_less(&g, 2, 2),
            Err(GraphError::SameVertex { vertex: 2 })
        ));
        assert!(degree_rank_less(&g, 0, 9).is_err());
    }

    #[test]
    fn example_degree_dag_matches_expected() {
        let d = directionalize_with(&example(), OrderingKind::Degree, 1);
        assert_eq!(
            out_lists(&d),
            vec![
                vec![1, 3, 4],
                vec![4],
                vec![1, 5],
                vec![1, 4],
                vec![],
                vec![4],
                vec![4, 5],
            ]
        );
        assert_eq!(d.out_degree(0).unwrap(), 3);
        assert_eq!(d.out_degree(4).unwrap(), 0);
        assert_eq!(d.max_out_degree(), 3);
        assert!(d.validate_orientation(&example()).is_empty());
    }

    #[test]
    fn example_core_dag() {
        let d = directionalize_with(&example(), OrderingKind::Core, 3);
        assert_eq!(d.max_out_degree(), 3);
        assert_eq!(
            out_lists(&d),
            vec![
                vec![1, 3, 4],
                vec![3, 4],
                vec![1, 5],
                vec![4],
                vec![],
                vec![4, 6],
                vec![4],
            ]
        );
        assert!(d.validate_orientation(&example()).is_empty());
    }

    #[test]
    fn triangle_is_transitive() {
        let g = UndirectedGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        for kind in [OrderingKind::Core, OrderingKind::Degree] {
            let d = directionalize_with(&g, kind, 1);
            assert_eq!(d.num_edges(), 3);
            let mut outs: Vec<usize> = (0..3).map(|u| d.out_degree(u).unwrap()).collect();
            outs.sort_unstable();
            assert_eq!(outs, vec![0, 1, 2]);
        }
    }

    #[test]
    fn degree_kind_equals_rank_route() {
        let g = example();
        let via_ranks = directionalize_by_rank(&g, &degree_ordering(&g), 1);
        for workers in 1..6 {
            assert_eq!(directionalize_with(&g, OrderingKind::Degree, workers), via_ranks);
        }
    }

    #[test]
    fn worker_count_does_not_change_dag() {
        // Isolated vertices on both ends exercise empty partitions.
        let g = UndirectedGraph::from_edges(12, &[(2, 3), (3, 4), (2, 4), (4, 9), (9, 10)]);
        let one = directionalize_with(&g, OrderingKind::Degree, 1);
        for workers in 2..16 {
            assert_eq!(directionalize_with(&g, OrderingKind::Degree, workers), one);
            assert_eq!(
                directionalize_with(&g, OrderingKind::Core, workers),
                directionalize_with(&g, OrderingKind::Core, 1)
            );
        }
        let empty = UndirectedGraph::default();
        assert_eq!(directionalize_with(&empty, OrderingKind::Degree, 4).num_vertices(), 0);
    }

    #[test]
    fn parses_kinds() {
        assert_eq!("core".parse(), Ok(OrderingKind::Core));
        assert_eq!("degree".parse(), Ok(OrderingKind::Degree));
        assert!("random".parse::<OrderingKind>().is_err());
    }
}
