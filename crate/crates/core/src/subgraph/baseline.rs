//! Label-vector subgraphs with a strided adjacency matrix.
//!
//! The first-level subgraph of `u` is found by labeling `u`'s out-neighbors
//! in a global label array, remapping them to `[0, c)`, and copying each
//! member's labeled neighbors into a flat adjacency array with a fixed
//! stride of `c` entries per vertex (`c` = maximum out-degree). Deeper
//! levels relabel in the remapped space and swap surviving neighbors to the
//! front of each stride in place.

use crate::graph::{Dag, VertexId};
use crate::metrics::Probe;

const UNMAPPED: u32 = u32::MAX;

/// Per-worker buffers for the label-vector strategy. Levels are indexed by
/// the clique size still to be found, `2..=k-1`.
#[derive(Debug, Clone)]
pub struct LabelWorkspace {
    k: u8,
    stride: usize,
    /// One label per DAG vertex; `k` at rest.
    labels: Vec<u8>,
    /// DAG id to first-level local id.
    remap: Vec<u32>,
    /// First-level local id to DAG id.
    old: Vec<VertexId>,
    /// Labels in the local id space.
    sub_labels: Vec<u8>,
    adjacency: Vec<u32>,
    degrees: Vec<Vec<u32>>,
    nodes: Vec<Vec<u32>>,
    counts: Vec<usize>,
}

impl LabelWorkspace {
    pub fn new(num_vertices: usize, max_out_degree: usize, k: u8) -> Self {
        assert!(k >= 3, "clique size must be at least 3");
        let c = max_out_degree;
        let levels = k as usize;
        Self {
            k,
            stride: c,
            labels: vec![k; num_vertices],
            remap: vec![UNMAPPED; num_vertices],
            old: vec![0; c],
            sub_labels: vec![0; c],
            adjacency: vec![0; c * c],
            degrees: vec![vec![0; c]; levels],
            nodes: vec![vec![0; c]; levels],
            counts: vec![0; levels],
        }
    }

    /// Bytes held by the structures a first-level subgraph occupies: both
    /// label arrays, the remap tables, the strided adjacency and one level of
    /// degrees and node lists. Independent of the vertex being processed.
    pub fn first_level_bytes(num_vertices: usize, max_out_degree: usize) -> usize {
        let c = max_out_degree;
        num_vertices          // labels (u8)
            + 4 * num_vertices // remap
            + 4 * c           // old
            + c               // sub_labels (u8)
            + 4 * c * c       // adjacency
            + 4 * c           // degrees
            + 4 * c // nodes
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Number of vertices in the subgraph at `level`.
    pub fn len(&self, level: usize) -> usize {
        self.counts[level]
    }

    /// Degrees at `level`, indexed by local id.
    pub fn degrees(&self, level: usize) -> &[u32] {
        &self.degrees[level]
    }

    /// Local ids of the vertices at `level`.
    pub fn nodes(&self, level: usize) -> &[u32] {
        &self.nodes[level][..self.counts[level]]
    }

    /// Live neighbors of local vertex `v` at `level`.
    pub fn neighbors(&self, level: usize, v: u32) -> &[u32] {
        let base = v as usize * self.stride;
        &self.adjacency[base..base + self.degrees[level][v as usize] as usize]
    }

    /// DAG id of first-level local id `v`.
    pub fn original_id(&self, v: u32) -> VertexId {
        self.old[v as usize]
    }

    /// Edges at `level` as `(from, to)` pairs in DAG ids.
    pub fn edges(&self, level: usize) -> Vec<(VertexId, VertexId)> {
        self.nodes(level)
            .iter()
            .flat_map(|&v| {
                self.neighbors(level, v)
                    .iter()
                    .map(move |&w| (self.original_id(v), self.original_id(w)))
            })
            .collect()
    }

    /// Builds the first-level subgraph of `u` at level `k - 1`.
    pub fn build_first_level<P: Probe>(&mut self, dag: &Dag, u: VertexId, probe: &mut P) {
        let k = self.k;
        let top = k as usize - 1;
        let c = self.stride;
        let members = dag.out_neighbors(u);
        probe.access(2);

        // Loop 1: collect out-neighbors still labeled k and relabel them.
        let mut n = 0usize;
        for &node in members {
            probe.access(2);
            if self.labels[node as usize] == k {
                self.labels[node as usize] = k - 1;
                self.remap[node as usize] = n as u32;
                self.old[n] = node;
                self.nodes[top][n] = n as u32;
                self.sub_labels[n] = k - 1;
                self.degrees[top][n] = 0;
                probe.access(6);
                n += 1;
            }
        }
        self.counts[top] = n;
        probe.iterations(members.len() as u64);

        // Loop 2: walk each member's list; labeled neighbors become edges.
        for i in 0..n {
            let v = self.old[i];
            let list = dag.out_neighbors(v);
            probe.access(3);
            probe.iterations(list.len() as u64);
            let base = i * c;
            let mut d = 0usize;
            for &w in list {
                probe.access(2);
                if self.labels[w as usize] == k - 1 {
                    self.adjacency[base + d] = self.remap[w as usize];
                    d += 1;
                    probe.access(4);
                }
            }
            self.degrees[top][i] = d as u32;
        }

        // Level exit for the global arrays: restore labels and the remap.
        for i in 0..n {
            let node = self.old[i] as usize;
            self.labels[node] = k;
            self.remap[node] = UNMAPPED;
            probe.access(3);
        }
    }

    /// Builds the subgraph at `level - 1` induced by local vertex `u` of the
    /// subgraph at `level`. Surviving neighbors are swapped to the front of
    /// each stride. Call [`restore`](Self::restore) when done with it.
    pub fn build_next_level<P: Probe>(&mut self, level: usize, u: u32, probe: &mut P) {
        let (here, below) = (level as u8, level as u8 - 1);
        let c = self.stride;
        let (lower, upper) = self.degrees.split_at_mut(level);
        let (deg_here, deg_below) = (&upper[0], &mut lower[level - 1]);
        let nodes_below = &mut self.nodes[level - 1];

        let base = u as usize * c;
        let end = base + deg_here[u as usize] as usize;
        let mut n = 0usize;
        for j in base..end {
            let v = self.adjacency[j];
            if self.sub_labels[v as usize] == here {
                self.sub_labels[v as usize] = below;
                nodes_below[n] = v;
                deg_below[v as usize] = 0;
                n += 1;
            }
        }
        probe.iterations((end - base) as u64);
        self.counts[level - 1] = n;

        for &v in &nodes_below[..n] {
            let base = v as usize * c;
            let mut end = base + deg_here[v as usize] as usize;
            probe.iterations((end - base) as u64);
            let mut j = base;
            while j < end {
                let w = self.adjacency[j];
                if self.sub_labels[w as usize] == below {
                    deg_below[v as usize] += 1;
                    j += 1;
                } else {
                    end -= 1;
                    self.adjacency[j] = self.adjacency[end];
                    self.adjacency[end] = w;
                }
            }
        }
    }

    /// Level exit: relabels the members of the subgraph at `level - 1` back
    /// to `level`.
    pub fn restore(&mut self, level: usize) {
        let n = self.counts[level - 1];
        for &v in &self.nodes[level - 1][..n] {
            self.sub_labels[v as usize] = level as u8;
        }
    }

    /// Sum of degrees at `level`, i.e. its edge count.
    pub fn degree_sum(&self, level: usize) -> u64 {
        self.nodes(level)
            .iter()
            .map(|&v| self.degrees[level][v as usize] as u64)
            .sum()
    }
}
