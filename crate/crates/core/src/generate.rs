//! Seeded synthetic graphs for tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{UndirectedGraph, VertexId};

/// G(n, p): every pair is an edge independently with probability `p`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> UndirectedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    UndirectedGraph::from_edges(n, &edges)
}

/// Chung–Lu graph with a power-law expected degree sequence. Vertex `i` gets
/// weight proportional to `(i + 1)^(-1 / (exponent - 1))`; `target_edges`
/// endpoint pairs are drawn by weight, then self-loops and duplicates are
/// dropped, so the result has slightly fewer edges.
pub fn power_law(n: usize, target_edges: usize, exponent: f64, seed: u64) -> UndirectedGraph {
    assert!(exponent > 1.0, "exponent must exceed 1");
    if n == 0 {
        return UndirectedGraph::from_edges(0, &[]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = 1.0 / (exponent - 1.0);
    let mut cumulative = Vec::with_capacity(n);
    let mut acc = 0.0f64;
    for i in 0..n {
        acc += ((i + 1) as f64).powf(-alpha);
        cumulative.push(acc);
    }
    let pick = |rng: &mut ChaCha8Rng| {
        let x = rng.gen::<f64>() * acc;
        cumulative.partition_point(|&c| c <= x).min(n - 1) as VertexId
    };
    // Shuffle ids so that degree does not follow id order.
    let mut ids: Vec<VertexId> = (0..n as VertexId).collect();
    for i in (1..n).rev() {
        ids.swap(i, rng.gen_range(0..=i));
    }
    let edges: Vec<(VertexId, VertexId)> = (0..target_edges)
        .map(|_| {
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            (ids[a as usize], ids[b as usize])
        })
        .collect();
    UndirectedGraph::from_edges(n, &edges)
}

/// The benchmark graph: 100k vertices, about a million edges.
pub fn power_law_benchmark() -> UndirectedGraph {
    power_law(100_000, 1_100_000, 2.3, 0x5eed)
}

/// The complete graph on `n` vertices.
pub fn complete(n: usize) -> UndirectedGraph {
    let n32 = n as VertexId;
    let edges: Vec<_> = (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v))).collect();
    UndirectedGraph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic_and_valid() {
        assert_eq!(erdos_renyi(40, 0.3, 1), erdos_renyi(40, 0.3, 1));
        assert_ne!(erdos_renyi(40, 0.3, 1), erdos_renyi(40, 0.3, 2));
        let g = power_law(2_000, 10_000, 2.1, 3);
        assert!(g.validate().is_empty());
        assert_eq!(g, power_law(2_000, 10_000, 2.1, 3));
        assert!(g.max_degree() > 10 * (2 * g.num_edges() / g.num_vertices()));
        assert_eq!(complete(5).num_edges(), 10);
        assert_eq!(erdos_renyi(10, 0.0, 0).num_edges(), 0);
        assert_eq!(erdos_renyi(10, 1.0, 0).num_edges(), 45);
    }
}
