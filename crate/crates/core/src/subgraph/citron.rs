//! Compact sorted-CSR induced subgraphs.
//!
//! A level stores its vertex set, one adjacency slice per vertex appended
//! back to back, row offsets and degrees. Slices are intersections of sorted
//! lists and therefore sorted themselves, so the next level is again built
//! with linear merges. Vertex ids stay in the DAG's id space; nothing is
//! remapped.

use crate::graph::{Dag, VertexId};
use crate::metrics::Probe;

use super::intersect::{intersect_count, intersect_into};

/// Something a child subgraph can be carved out of: the DAG itself (for
/// first-level subgraphs) or a materialized [`CsrLevel`].
pub trait ParentView {
    /// Adjacency slice of the vertex at `index`; this becomes the child's
    /// vertex set.
    fn slice_at<P: Probe>(&self, index: usize, probe: &mut P) -> &[VertexId];

    /// Adjacency slice of vertex `v`. Calls arrive with ascending `v`, so
    /// implementations may keep a forward-only `cursor`.
    fn slice_of<P: Probe>(&self, v: VertexId, cursor: &mut usize, probe: &mut P) -> &[VertexId];
}

impl ParentView for Dag {
    #[inline]
    fn slice_at<P: Probe>(&self, index: usize, probe: &mut P) -> &[VertexId] {
        probe.access(2);
        self.out_neighbors(index as VertexId)
    }

    #[inline]
    fn slice_of<P: Probe>(&self, v: VertexId, _cursor: &mut usize, probe: &mut P) -> &[VertexId] {
        probe.access(2);
        self.out_neighbors(v)
    }
}

/// One recursion level's buffers, preallocated and reused.
#[derive(Debug, Clone)]
pub struct CsrLevel {
    vertices: Box<[VertexId]>,
    offsets: Box<[u32]>,
    adjacency: Box<[VertexId]>,
    degrees: Box<[u32]>,
    len: usize,
}

impl CsrLevel {
    /// Room for `max_vertices` vertices and `max_edges` adjacency entries.
    pub fn with_capacity(max_vertices: usize, max_edges: usize) -> Self {
        assert!(max_edges <= u32::MAX as usize, "subgraph edge capacity exceeds u32");
        Self {
            vertices: vec![0; max_vertices].into_boxed_slice(),
            offsets: vec![0; max_vertices + 1].into_boxed_slice(),
            adjacency: vec![0; max_edges].into_boxed_slice(),
            degrees: vec![0; max_vertices].into_boxed_slice(),
            len: 0,
        }
    }

    /// Capacity for every subgraph of a DAG whose maximum out-degree is
    /// `max_out_degree`. At most `c(c-1)/2` edges are ever stored; the rest
    /// is slack that lets intersections write without a bounds branch.
    pub fn for_max_out_degree(max_out_degree: usize) -> Self {
        let c = max_out_degree;
        Self::with_capacity(c, c * c)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices[..self.len]
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees[..self.len]
    }

    pub fn offsets(&self) -> &[u32] {
        &self.offsets[..=self.len]
    }

    pub fn num_edges(&self) -> usize {
        self.offsets[self.len] as usize
    }

    #[inline]
    pub fn slice(&self, index: usize) -> &[VertexId] {
        &self.adjacency[self.offsets[index] as usize..self.offsets[index + 1] as usize]
    }

    /// Edges as `(from, to)` pairs in DAG ids.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.len)
            .flat_map(|i| self.slice(i).iter().map(move |&w| (self.vertices[i], w)))
            .collect()
    }

    /// Bytes occupied by the current subgraph: vertex set, offsets,
    /// adjacency and degrees.
    pub fn bytes_in_use(&self) -> usize {
        4 * (self.len + (self.len + 1) + self.num_edges() + self.len)
    }

    /// Total bytes reserved.
    pub fn capacity_bytes(&self) -> usize {
        4 * (self.vertices.len() + self.offsets.len() + self.adjacency.len() + self.degrees.len())
    }

    /// Whether every slice is sorted and drawn from the vertex set.
    pub fn is_well_formed(&self) -> bool {
        let vs = self.vertices();
        vs.windows(2).all(|w| w[0] < w[1])
            && (0..self.len).all(|i| {
                let s = self.slice(i);
                s.len() == self.degrees[i] as usize
                    && s.windows(2).all(|w| w[0] < w[1])
                    && s.iter().all(|w| vs.binary_search(w).is_ok())
            })
    }

    /// Builds the child of `parent` at `index`: its vertex set is the
    /// parent's slice, and each member's slice is the member's parent slice
    /// intersected with that vertex set.
    pub fn build_from<V: ParentView, P: Probe>(&mut self, parent: &V, index: usize, probe: &mut P) {
        let set = parent.slice_at(index, probe);
        let n = set.len();
        self.vertices[..n].copy_from_slice(set);
        probe.access(2 * n as u64);
        self.len = n;
        self.offsets[0] = 0;
        probe.access(1);
        if n < 2 {
            // A single vertex has nothing to intersect with.
            self.offsets[..=n].fill(0);
            self.degrees[..n].fill(0);
            probe.access(2 * n as u64);
            return;
        }

        let Self {
            vertices,
            offsets,
            adjacency,
            degrees,
            ..
        } = self;
        let set = &vertices[..n];
        let mut cursor = 0usize;
        let mut end = 0usize;
        for (i, &v) in set.iter().enumerate() {
            probe.access(1);
            let theirs = parent.slice_of(v, &mut cursor, probe);
            let found = intersect_into(set, theirs, &mut adjacency[end..], probe);
            end += found;
            degrees[i] = found as u32;
            offsets[i + 1] = end as u32;
            probe.access(2);
        }
        debug_assert!(self.is_well_formed());
    }

    /// Degrees of the would-be child at `index` without materializing its
    /// adjacency or offsets. Writes into `out` and returns the filled prefix.
    pub fn child_degrees<'o, V: ParentView, P: Probe>(
        parent: &V,
        index: usize,
        out: &'o mut [u32],
        probe: &mut P,
    ) -> &'o [u32] {
        let set = parent.slice_at(index, probe);
        let n = set.len();
        let mut cursor = 0usize;
        for (i, &v) in set.iter().enumerate() {
            probe.access(1);
            let theirs = parent.slice_of(v, &mut cursor, probe);
            out[i] = intersect_count(set, theirs, probe) as u32;
            probe.access(1);
        }
        &out[..n]
    }
}

impl ParentView for CsrLevel {
    #[inline]
    fn slice_at<P: Probe>(&self, index: usize, probe: &mut P) -> &[VertexId] {
        probe.access(2);
        self.slice(index)
    }

    #[inline]
    fn slice_of<P: Probe>(&self, v: VertexId, cursor: &mut usize, probe: &mut P) -> &[VertexId] {
        // The child set is a sorted subset of our vertex set, so each member
        // lies at or after the previous one.
        let rest = &self.vertices()[*cursor..];
        *cursor += rest.partition_point(|&x| x < v);
        debug_assert_eq!(self.vertices[*cursor], v);
        probe.access(u64::from(usize::BITS - rest.len().leading_zeros()) + 2);
        self.slice(*cursor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::example;
    use crate::graph::UndirectedGraph;
    use crate::metrics::Iterations;
    use crate::ordering::{directionalize_with, OrderingKind};

    fn example_degree_dag() -> Dag {
        directionalize_with(&example(), OrderingKind::Degree, 1)
    }

    #[test]
    fn example_first_level_of_vertex_0() {
        let dag = example_degree_dag();
        let mut level = CsrLevel::for_max_out_degree(dag.max_out_degree());
        level.build_from(&dag, 0, &mut Iterations::default());
        assert_eq!(level.vertices(), &[1, 3, 4]);
        assert_eq!(level.degrees(), &[1, 2, 0]);
        assert_eq!(level.offsets(), &[0, 1, 3, 3]);
        assert_eq!(level.slice(0), &[4]);
        assert_eq!(level.slice(1), &[1, 4]);
        assert!(level.slice(2).is_empty());
        assert_eq!(level.edges(), vec![(1, 4), (3, 1), (3, 4)]);
        assert!(level.is_well_formed());
    }

    #[test]
    fn example_first_level_of_vertex_6() {
        let dag = example_degree_dag();
        let mut level = CsrLevel::for_max_out_degree(dag.max_out_degree());
        level.build_from(&dag, 6, &mut Iterations::default());
        assert_eq!(level.vertices(), &[4, 5]);
        assert_eq!(level.degrees(), &[0, 1]);
    }

    #[test]
    fn sink_vertex_gives_empty_subgraph() {
        let dag = example_degree_dag();
        let mut level = CsrLevel::for_max_out_degree(3);
        level.build_from(&dag, 0, &mut Iterations::default());
        level.build_from(&dag, 4, &mut Iterations::default());
        assert!(level.is_empty());
        assert_eq!(level.num_edges(), 0);
        assert_eq!(level.bytes_in_use(), 4);
    }

    #[test]
    fn next_level_from_vertex_3_slice() {
        let dag = example_degree_dag();
        let mut first = CsrLevel::for_max_out_degree(3);
        first.build_from(&dag, 0, &mut Iterations::default());
        let mut second = CsrLevel::for_max_out_degree(3);
        // Index 1 in the first level is vertex 3 with slice {1, 4}.
        second.build_from(&first, 1, &mut Iterations::default());
        assert_eq!(second.vertices(), &[1, 4]);
        assert_eq!(second.degrees(), &[1, 0]);

        let mut out = [0u32; 3];
        let degs = CsrLevel::child_degrees(&first, 1, &mut out, &mut Iterations::default());
        assert_eq!(degs, &[1, 0]);
        // Vertex 4 (index 2) has an empty slice.
        assert!(CsrLevel::child_degrees(&first, 2, &mut out, &mut Iterations::default()).is_empty());
        second.build_from(&first, 2, &mut Iterations::default());
        assert!(second.is_empty());
    }

    #[test]
    fn k5_lowest_vertex_child_degrees() {
        let edges: Vec<_> = (0..5u32).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
        let g = UndirectedGraph::from_edges(5, &edges);
        let dag = directionalize_with(&g, OrderingKind::Degree, 1);
        let mut first = CsrLevel::for_max_out_degree(dag.max_out_degree());
        first.build_from(&dag, 0, &mut Iterations::default());
        assert_eq!(first.vertices(), &[1, 2, 3, 4]);
        assert_eq!(first.degrees(), &[3, 2, 1, 0]);
        let mut out = [0u32; 4];
        let degs = CsrLevel::child_degrees(&first, 0, &mut out, &mut Iterations::default());
        assert_eq!(degs, &[2, 1, 0]);
    }

    #[test]
    fn dag_child_degrees_match_full_build() {
        let dag = example_degree_dag();
        let mut level = CsrLevel::for_max_out_degree(3);
        let mut out = [0u32; 3];
        for u in 0..7 {
            level.build_from(&dag, u, &mut Iterations::default());
            let degs = CsrLevel::child_degrees(&dag, u, &mut out, &mut Iterations::default());
            assert_eq!(degs, level.degrees());
        }
    }
}
