//! Brute-force clique counting for verification.
//!
//! Works directly on the undirected adjacency: a clique is grown one vertex
//! at a time from candidates with larger ids that are adjacent to every
//! vertex chosen so far. No orientation or subgraph machinery is shared with
//! the main counter.

use thiserror::Error;

use crate::count::CliqueCount;
use crate::graph::{UndirectedGraph, VertexId};

/// Largest graph the oracle agrees to look at.
pub const ORACLE_MAX_VERTICES: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {num_vertices} vertices; the brute-force oracle accepts at most {ORACLE_MAX_VERTICES}")]
    TooLarge { num_vertices: usize },
    #[error("clique size must be at least 1")]
    InvalidK,
    #[error("clique count overflowed u64")]
    Overflow,
}

pub fn brute_force_count(g: &UndirectedGraph, k: usize) -> Result<CliqueCount, OracleError> {
    let n = g.num_vertices();
    if n > ORACLE_MAX_VERTICES {
        return Err(OracleError::TooLarge { num_vertices: n });
    }
    match k {
        0 => return Err(OracleError::InvalidK),
        1 => return Ok(CliqueCount(n as u64)),
        2 => return Ok(CliqueCount(g.num_edges() as u64)),
        _ => {}
    }
    let mut total = 0u64;
    let mut chosen = Vec::with_capacity(k);
    for u in 0..n as VertexId {
        chosen.push(u);
        let candidates: Vec<VertexId> = g.neighbors(u).iter().copied().filter(|&v| v > u).collect();
        total = total
            .checked_add(extend(g, k, &mut chosen, &candidates)?)
            .ok_or(OracleError::Overflow)?;
        chosen.pop();
    }
    Ok(CliqueCount(total))
}

/// Cliques of size `k` containing `chosen` whose remaining members come
/// from `candidates`, all of which are adjacent to everything in `chosen`.
fn extend(
    g: &UndirectedGraph,
    k: usize,
    chosen: &mut Vec<VertexId>,
    candidates: &[VertexId],
) -> Result<u64, OracleError> {
    let need = k - chosen.len();
    if need == 0 {
        return Ok(1);
    }
    if candidates.len() < need {
        return Ok(0);
    }
    let mut total = 0u64;
    for (i, &v) in candidates.iter().enumerate() {
        let next: Vec<VertexId> = candidates[i + 1..]
            .iter()
            .copied()
            .filter(|&w| g.has_edge(v, w))
            .collect();
        chosen.push(v);
        let found = extend(g, k, chosen, &next)?;
        chosen.pop();
        total = total.checked_add(found).ok_or(OracleError::Overflow)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, erdos_renyi};
    use crate::graph::tests::example;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Triangles as trace(A^3) / 6 over a dense matrix.
    fn triangles_by_matrix(g: &UndirectedGraph) -> u64 {
        let n = g.num_vertices();
        let mut a = vec![vec![0u64; n]; n];
        for (u, v) in g.edges() {
            a[u as usize][v as usize] = 1;
            a[v as usize][u as usize] = 1;
        }
        let mul = |x: &Vec<Vec<u64>>, y: &Vec<Vec<u64>>| {
            let mut z = vec![vec![0u64; n]; n];
            for i in 0..n {
                for l in 0..n {
                    if x[i][l] != 0 {
                        for j in 0..n {
                            z[i][j] += x[i][l] * y[l][j];
                        }
                    }
                }
            }
            z
        };
        let a3 = mul(&mul(&a, &a), &a);
        (0..n).map(|i| a3[i][i]).sum::<u64>() / 6
    }

    #[test]
    fn example_counts() {
        let g = example();
        assert_eq!(brute_force_count(&g, 3).unwrap().get(), triangles_by_matrix(&g));
        assert_eq!(triangles_by_matrix(&g), 5);
        assert_eq!(brute_force_count(&g, 4).unwrap().get(), 1);
        assert_eq!(brute_force_count(&g, 5).unwrap().get(), 0);
        assert_eq!(brute_force_count(&g, 2).unwrap().get(), 11);
        assert_eq!(brute_force_count(&g, 1).unwrap().get(), 7);
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(brute_force_count(&complete(6), 6).unwrap().get(), 1);
        assert_eq!(brute_force_count(&complete(6), 4).unwrap().get(), 15);
        assert_eq!(brute_force_count(&complete(6), 7).unwrap().get(), 0);
    }

    #[test]
    fn matches_matrix_method_on_random_graphs() {
        for seed in 0..20 {
            let g = erdos_renyi(30, 0.3, seed);
            assert_eq!(brute_force_count(&g, 3).unwrap().get(), triangles_by_matrix(&g));
        }
    }

    #[test]
    fn invariant_under_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for seed in 0..10 {
            let g = erdos_renyi(25, 0.4, seed);
            let mut perm: Vec<VertexId> = (0..25).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm);
            for k in 3..=5 {
                assert_eq!(brute_force_count(&g, k), brute_force_count(&h, k));
            }
        }
    }

    #[test]
    fn guards() {
        assert_eq!(brute_force_count(&example(), 0), Err(OracleError::InvalidK));
        let big = UndirectedGraph::from_edges(ORACLE_MAX_VERTICES + 1, &[]);
        assert_eq!(
            brute_force_count(&big, 3),
            Err(OracleError::TooLarge { num_vertices: ORACLE_MAX_VERTICES + 1 })
        );
    }
}
