//! Compressed sparse row graphs: the symmetric input graph and its
//! directionalized DAG.
//!
//! Offsets are 64-bit so edge counts may exceed `u32::MAX`; vertex ids are
//! 32-bit. Both types are immutable once built and can be shared freely
//! between worker threads.

use std::fmt;

use thiserror::Error;

/// Dense vertex identifier in `[0, |V|)`.
pub type VertexId = u32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {num_vertices} vertices")]
    VertexOutOfRange { vertex: u64, num_vertices: usize },
    #[error("vertex {vertex} compared with itself")]
    SameVertex { vertex: VertexId },
    #[error("malformed graph: {}", .0.first().map(ToString::to_string).unwrap_or_default())]
    Invalid(Vec<Violation>),
}

/// A broken structural invariant, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `offsets` does not have `num_vertices + 1` entries.
    OffsetsLength { expected: usize, actual: usize },
    /// `offsets[0] != 0`.
    OffsetsStart { value: u64 },
    /// `offsets[|V|]` disagrees with the neighbor array length.
    OffsetsEnd { value: u64, neighbors: usize },
    /// `offsets[vertex + 1] < offsets[vertex]`.
    OffsetsDecreasing { vertex: VertexId },
    NeighborOutOfRange { vertex: VertexId, neighbor: VertexId },
    UnsortedList { vertex: VertexId },
    DuplicateNeighbor { vertex: VertexId, neighbor: VertexId },
    SelfLoop { vertex: VertexId },
    /// `neighbor ∈ N(vertex)` but `vertex ∉ N(neighbor)`.
    Asymmetric { vertex: VertexId, neighbor: VertexId },
    /// `vertex` lies on a directed cycle.
    Cycle { vertex: VertexId },
    /// Directed edge count does not match the undirected edge count.
    EdgeCount { expected: usize, actual: usize },
    /// Undirected edge `{u, v}` is missing from the DAG or present in both directions.
    Orientation { u: VertexId, v: VertexId, copies: u8 },
    /// DAG edge without a matching undirected edge.
    ForeignEdge { u: VertexId, v: VertexId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OffsetsLength { expected, actual } => {
                write!(f, "offsets length: expected {expected}, got {actual}")
            }
            Violation::OffsetsStart { value } => write!(f, "offsets start: offsets[0] = {value}"),
            Violation::OffsetsEnd { value, neighbors } => write!(
                f,
                "offsets end: last offset {value} but {neighbors} neighbor entries"
            ),
            Violation::OffsetsDecreasing { vertex } => {
                write!(f, "offsets decreasing at vertex {vertex}")
            }
            Violation::NeighborOutOfRange { vertex, neighbor } => {
                write!(f, "neighbor out of range: {vertex} -> {neighbor}")
            }
            Violation::UnsortedList { vertex } => write!(f, "unsorted list at vertex {vertex}"),
            Violation::DuplicateNeighbor { vertex, neighbor } => {
                write!(f, "duplicate neighbor {neighbor} at vertex {vertex}")
            }
            Violation::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Violation::Asymmetric { vertex, neighbor } => {
                write!(f, "asymmetric edge: {vertex} -> {neighbor} has no reverse")
            }
            Violation::Cycle { vertex } => write!(f, "cycle through vertex {vertex}"),
            Violation::EdgeCount { expected, actual } => {
                write!(f, "edge count: expected {expected}, got {actual}")
            }
            Violation::Orientation { u, v, copies } => {
                write!(f, "edge {{{u}, {v}}} oriented {copies} times")
            }
            Violation::ForeignEdge { u, v } => write!(f, "edge {u} -> {v} not in source graph"),
        }
    }
}

/// Symmetric CSR adjacency. Every undirected edge is stored in both
/// endpoints' lists; lists are sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UndirectedGraph {
    num_vertices: usize,
    offsets: Vec<u64>,
    neighbors: Vec<VertexId>,
}

impl UndirectedGraph {
    /// Builds a graph from raw CSR arrays, rejecting anything that fails
    /// [`validate`](Self::validate).
    pub fn from_csr(
        num_vertices: usize,
        offsets: Vec<u64>,
        neighbors: Vec<VertexId>,
    ) -> Result<Self, GraphError> {
        let g = Self::from_csr_unchecked(num_vertices, offsets, neighbors);
        let violations = g.validate();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(GraphError::Invalid(violations))
        }
    }

    /// Wraps raw CSR arrays without checking them. Intended for loaders that
    /// validate separately and for constructing defective inputs in tests.
    pub fn from_csr_unchecked(
        num_vertices: usize,
        offsets: Vec<u64>,
        neighbors: Vec<VertexId>,
    ) -> Self {
        Self {
            num_vertices,
            offsets,
            neighbors,
        }
    }

    /// Builds a graph on `num_vertices` dense vertices from an unordered edge
    /// list. Self-loops and duplicates are dropped.
    pub fn from_edges(num_vertices: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut directed: Vec<(VertexId, VertexId)> = Vec::with_capacity(edges.len() * 2);
        for &(u, v) in edges {
            assert!(
                (u as usize) < num_vertices && (v as usize) < num_vertices,
                "edge ({u}, {v}) out of range for {num_vertices} vertices"
            );
            if u != v {
                directed.push((u, v));
                directed.push((v, u));
            }
        }
        directed.sort_unstable();
        directed.dedup();
        Self::from_sorted_pairs(num_vertices, &directed)
    }

    /// The same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[VertexId]) -> Self {
        assert_eq!(perm.len(), self.num_vertices, "permutation size mismatch");
        let edges: Vec<_> = self
            .edges()
            .map(|(u, v)| (perm[u as usize], perm[v as usize]))
            .collect();
        Self::from_edges(self.num_vertices, &edges)
    }

    /// `pairs` must be sorted, duplicate-free and symmetric.
    pub(crate) fn from_sorted_pairs(num_vertices: usize, pairs: &[(VertexId, VertexId)]) -> Self {
        let mut offsets = vec![0u64; num_vertices + 1];
        for &(u, _) in pairs {
            offsets[u as usize + 1] += 1;
        }
        for i in 0..num_vertices {
            offsets[i + 1] += offsets[i];
        }
        let neighbors = pairs.iter().map(|&(_, v)| v).collect();
        Self {
            num_vertices,
            offsets,
            neighbors,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Number of undirected edges.
    pub fn num_edges(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn neighbor_array(&self) -> &[VertexId] {
        &self.neighbors
    }

    /// Sorted neighbor list of `u`. Panics if `u` is out of range.
    #[inline]
    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        let u = u as usize;
        &self.neighbors[self.offsets[u] as usize..self.offsets[u + 1] as usize]
    }

    pub fn degree(&self, u: VertexId) -> Result<usize, GraphError> {
        check_vertex(u, self.num_vertices)?;
        Ok(self.degree_unchecked(u))
    }

    #[inline]
    pub(crate) fn degree_unchecked(&self, u: VertexId) -> usize {
        (self.offsets[u as usize + 1] - self.offsets[u as usize]) as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.num_vertices as VertexId)
            .map(|u| self.degree_unchecked(u))
            .max()
            .unwrap_or(0)
    }

    /// Iterates every undirected edge once as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.num_vertices as VertexId).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Checks every representation invariant; an empty result means the
    /// graph is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = check_csr_shape(self.num_vertices, &self.offsets, self.neighbors.len());
        if !out.is_empty() {
            return out;
        }
        check_lists(self.num_vertices, &self.offsets, &self.neighbors, &mut out);
        if out.is_empty() {
            for u in 0..self.num_vertices as VertexId {
                for &v in self.neighbors(u) {
                    if !self.has_edge(v, u) {
                        out.push(Violation::Asymmetric {
                            vertex: u,
                            neighbor: v,
                        });
                    }
                }
            }
        }
        out
    }
}

/// Directed CSR with each undirected edge stored once. Out-neighbor lists
/// are sorted by vertex id and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Dag {
    num_vertices: usize,
    offsets: Vec<u64>,
    out_neighbors: Vec<VertexId>,
}

impl Dag {
    pub fn from_csr(
        num_vertices: usize,
        offsets: Vec<u64>,
        out_neighbors: Vec<VertexId>,
    ) -> Result<Self, GraphError> {
        let d = Self::from_csr_unchecked(num_vertices, offsets, out_neighbors);
        let violations = d.validate();
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(GraphError::Invalid(violations))
        }
    }

    pub fn from_csr_unchecked(
        num_vertices: usize,
        offsets: Vec<u64>,
        out_neighbors: Vec<VertexId>,
    ) -> Self {
        Self {
            num_vertices,
            offsets,
            out_neighbors,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Number of directed edges.
    pub fn num_edges(&self) -> usize {
        self.out_neighbors.len()
    }

    pub fn offsets(&self) -> &[u64] {
        &self.offsets
    }

    pub fn out_neighbor_array(&self) -> &[VertexId] {
        &self.out_neighbors
    }

    #[inline]
    pub fn out_neighbors(&self, u: VertexId) -> &[VertexId] {
        let u = u as usize;
        &self.out_neighbors[self.offsets[u] as usize..self.offsets[u + 1] as usize]
    }

    pub fn out_degree(&self, u: VertexId) -> Result<usize, GraphError> {
        check_vertex(u, self.num_vertices)?;
        Ok(self.out_degree_unchecked(u))
    }

    #[inline]
    pub(crate) fn out_degree_unchecked(&self, u: VertexId) -> usize {
        (self.offsets[u as usize + 1] - self.offsets[u as usize]) as usize
    }

    pub fn max_out_degree(&self) -> usize {
        (0..self.num_vertices as VertexId)
            .map(|u| self.out_degree_unchecked(u))
            .max()
            .unwrap_or(0)
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.num_vertices as VertexId)
            .flat_map(move |u| self.out_neighbors(u).iter().map(move |&v| (u, v)))
    }

    /// Checks list invariants and acyclicity.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = check_csr_shape(self.num_vertices, &self.offsets, self.out_neighbors.len());
        if !out.is_empty() {
            return out;
        }
        check_lists(
            self.num_vertices,
            &self.offsets,
            &self.out_neighbors,
            &mut out,
        );
        if out.is_empty() {
            if let Some(vertex) = self.find_cycle_vertex() {
                out.push(Violation::Cycle { vertex });
            }
        }
        out
    }

    /// Checks that `self` orients `g`: every undirected edge appears exactly
    /// once, in one direction, and nothing else appears.
    pub fn validate_orientation(&self, g: &UndirectedGraph) -> Vec<Violation> {
        let mut out = self.validate();
        if !out.is_empty() {
            return out;
        }
        if self.num_vertices != g.num_vertices() {
            out.push(Violation::OffsetsLength {
                expected: g.num_vertices() + 1,
                actual: self.offsets.len(),
            });
            return out;
        }
        if self.num_edges() != g.num_edges() {
            out.push(Violation::EdgeCount {
                expected: g.num_edges(),
                actual: self.num_edges(),
            });
        }
        for (u, v) in g.edges() {
            let forward = self.out_neighbors(u).binary_search(&v).is_ok();
            let backward = self.out_neighbors(v).binary_search(&u).is_ok();
            if forward == backward {
                out.push(Violation::Orientation {
                    u,
                    v,
                    copies: forward as u8 * 2,
                });
            }
        }
        for (u, v) in self.edges() {
            if !g.has_edge(u, v) {
                out.push(Violation::ForeignEdge { u, v });
            }
        }
        out
    }

    // Kahn's algorithm; any vertex left with positive in-degree is on or
    // behind a cycle, so walk predecessors until one repeats.
    fn find_cycle_vertex(&self) -> Option<VertexId> {
        let n = self.num_vertices;
        let mut indeg = vec![0u32; n];
        for &v in &self.out_neighbors {
            indeg[v as usize] += 1;
        }
        let mut stack: Vec<VertexId> = (0..n as VertexId)
            .filter(|&u| indeg[u as usize] == 0)
            .collect();
        let mut seen = 0usize;
        while let Some(u) = stack.pop() {
            seen += 1;
            for &v in self.out_neighbors(u) {
                indeg[v as usize] -= 1;
                if indeg[v as usize] == 0 {
                    stack.push(v);
                }
            }
        }
        if seen == n {
            return None;
        }
        // Follow out-edges inside the residual subgraph until a vertex repeats.
        let mut visited = vec![false; n];
        let mut u = (0..n as VertexId).find(|&u| indeg[u as usize] > 0)?;
        loop {
            if visited[u as usize] {
                return Some(u);
            }
            visited[u as usize] = true;
            u = *self
                .out_neighbors(u)
                .iter()
                .find(|&&v| indeg[v as usize] > 0)?;
        }
    }
}

/// Per-vertex rank used to orient edges from lower to higher rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankAssignment {
    ranks: Vec<u32>,
}

impl RankAssignment {
    /// Wraps `ranks`, checking it is a permutation of `[0, len)`.
    pub fn new(ranks: Vec<u32>) -> Result<Self, GraphError> {
        let mut seen = vec![false; ranks.len()];
        for &r in &ranks {
            match seen.get_mut(r as usize) {
                Some(s) if !*s => *s = true,
                _ => {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: r as u64,
                        num_vertices: ranks.len(),
                    })
                }
            }
        }
        Ok(Self { ranks })
    }

    /// Ranks from a removal/visit order: `order[i]` receives rank `i`.
    pub fn from_order(order: &[VertexId]) -> Result<Self, GraphError> {
        let mut ranks = vec![u32::MAX; order.len()];
        for (i, &v) in order.iter().enumerate() {
            match ranks.get_mut(v as usize) {
                Some(r) if *r == u32::MAX => *r = i as u32,
                _ => {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: v as u64,
                        num_vertices: order.len(),
                    })
                }
            }
        }
        Ok(Self { ranks })
    }

    #[inline]
    pub fn rank(&self, v: VertexId) -> u32 {
        self.ranks[v as usize]
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.ranks
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Vertices listed by ascending rank.
    pub fn order(&self) -> Vec<VertexId> {
        let mut order = vec![0; self.ranks.len()];
        for (v, &r) in self.ranks.iter().enumerate() {
            order[r as usize] = v as VertexId;
        }
        order
    }
}

fn check_vertex(u: VertexId, num_vertices: usize) -> Result<(), GraphError> {
    if (u as usize) < num_vertices {
        Ok(())
    } else {
        Err(GraphError::VertexOutOfRange {
            vertex: u as u64,
            num_vertices,
        })
    }
}

fn check_csr_shape(num_vertices: usize, offsets: &[u64], entries: usize) -> Vec<Violation> {
    let mut out = Vec::new();
    if offsets.len() != num_vertices + 1 {
        out.push(Violation::OffsetsLength {
            expected: num_vertices + 1,
            actual: offsets.len(),
        });
        return out;
    }
    if offsets[0] != 0 {
        out.push(Violation::OffsetsStart { value: offsets[0] });
    }
    if offsets[num_vertices] != entries as u64 {
        out.push(Violation::OffsetsEnd {
            value: offsets[num_vertices],
            neighbors: entries,
        });
    }
    for (u, w) in offsets.windows(2).enumerate() {
        if w[1] < w[0] {
            out.push(Violation::OffsetsDecreasing {
                vertex: u as VertexId,
            });
        }
    }
    out
}

fn check_lists(num_vertices: usize, offsets: &[u64], lists: &[VertexId], out: &mut Vec<Violation>) {
    for u in 0..num_vertices {
        let list = &lists[offsets[u] as usize..offsets[u + 1] as usize];
        let vertex = u as VertexId;
        let mut reported_order = false;
        for (i, &v) in list.iter().enumerate() {
            if v as usize >= num_vertices {
                out.push(Violation::NeighborOutOfRange {
                    vertex,
                    neighbor: v,
                });
            }
            if v == vertex {
                out.push(Violation::SelfLoop { vertex });
            }
            if i > 0 {
                let prev = list[i - 1];
                if prev == v {
                    out.push(Violation::DuplicateNeighbor {
                        vertex,
                        neighbor: v,
                    });
                } else if prev > v && !reported_order {
                    out.push(Violation::UnsortedList { vertex });
                    reported_order = true;
                }
            }
        }
    }
}
