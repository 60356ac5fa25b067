//! Induced-subgraph builders used by the counting recursion.

use std::fmt;
use std::str::FromStr;

pub mod baseline;
pub mod citron;
pub mod intersect;

pub use baseline::LabelWorkspace;
pub use citron::{CsrLevel, ParentView};

/// How subgraphs are materialized during recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Global label array with a strided, in-place swapped adjacency.
    Baseline,
    /// Compact sorted CSR per level, built with merge intersections.
    #[default]
    Citron,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Baseline => "baseline",
            Strategy::Citron => "citron",
        })
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "baseline" => Ok(Strategy::Baseline),
            "citron" => Ok(Strategy::Citron),
            _ => Err(format!("unknown strategy {s:?} (expected baseline or citron)")),
        }
    }
}
