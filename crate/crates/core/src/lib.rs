//! Exact k-clique counting on large sparse graphs.
//!
//! The input graph is oriented into a DAG by a vertex order (the degeneracy
//! order or the cheaper, parallel degree order), after which every k-clique
//! is found exactly once by recursing through out-neighborhoods. Two
//! interchangeable subgraph builders are provided: a label-vector layout
//! and a compact sorted-CSR layout built with merge intersections.
//!
//! ```
//! use kclique::{count_cliques, CountConfig, UndirectedGraph};
//!
//! let g = UndirectedGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3), (1, 3)]);
//! let (count, _stats) = count_cliques(&g, &CountConfig::new(3)).unwrap();
//! assert_eq!(count.get(), 2);
//! ```

pub mod count;
pub mod generate;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod oracle;
pub mod ordering;
pub mod schedule;
pub mod subgraph;

pub use count::{aggregate, count_cliques, count_dag, CliqueCount, CountConfig, CountError, PruneMode, MAX_K};
pub use graph::{Dag, GraphError, RankAssignment, UndirectedGraph, VertexId, Violation};
pub use ingest::{load_csr, load_graph, parse_edge_list, save_csr, EdgeList, IngestError};
pub use metrics::{load_imbalance, work_model, RunStats};
pub use oracle::{brute_force_count, OracleError, ORACLE_MAX_VERTICES};
pub use ordering::{core_ordering, degree_rank_less, directionalize, directionalize_with, OrderingKind};
pub use schedule::Schedule;
pub use subgraph::Strategy;
