//! Edge-list parsing, symmetrization and the `.csrbin` cache format.
//!
//! Text input is SNAP style: one `u v` pair per line separated by spaces or
//! tabs, with `#` and `%` comment lines. Raw ids are compacted to dense ids
//! in ascending raw-id order so vertex numbering is reproducible.
//!
//! The binary cache is little-endian throughout:
//!
//! ```text
//! magic      8 bytes  "KCSRBIN\0"
//! version    u32      1
//! vertices   u64
//! entries    u64      length of the neighbor array (2 * |E|)
//! offsets    (vertices + 1) * u64
//! neighbors  entries * u32
//! ```

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use thiserror::Error;

use crate::graph::{UndirectedGraph, VertexId};

pub const CSR_MAGIC: &[u8; 8] = b"KCSRBIN\0";
pub const CSR_VERSION: u32 = 1;
pub const CSR_EXTENSION: &str = "csrbin";

const HEADER_LEN: usize = 8 + 4 + 8 + 8;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("bad CSR cache: {0}")]
    Format(String),
}

/// Raw `(u, v)` pairs in file order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeList {
    pub pairs: Vec<(u64, u64)>,
}

impl EdgeList {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl From<Vec<(u64, u64)>> for EdgeList {
    fn from(pairs: Vec<(u64, u64)>) -> Self {
        Self { pairs }
    }
}

pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<EdgeList, IngestError> {
    let mut pairs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_ascii_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(IngestError::Parse {
                line: lineno,
                message: format!(
                    "expected two vertex ids, found {} tokens",
                    trimmed.split_ascii_whitespace().count()
                ),
            });
        };
        pairs.push((parse_id(a, lineno)?, parse_id(b, lineno)?));
    }
    Ok(EdgeList { pairs })
}

fn parse_id(token: &str, line: usize) -> Result<u64, IngestError> {
    token.parse::<u64>().map_err(|_| IngestError::Parse {
        line,
        message: format!("invalid vertex id {token:?}"),
    })
}

pub fn read_edge_list_file(path: impl AsRef<Path>) -> Result<EdgeList, IngestError> {
    parse_edge_list(BufReader::new(File::open(path)?))
}

/// Symmetrizes and cleans an edge list into a CSR graph.
pub fn build_undirected(edges: &EdgeList) -> UndirectedGraph {
    let mut ids: Vec<u64> = edges.pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    assert!(
        ids.len() < u32::MAX as usize,
        "{} distinct vertices exceed the 32-bit id space",
        ids.len()
    );
    let dense = |raw: u64| ids.binary_search(&raw).expect("raw id collected above") as VertexId;

    let mut directed = Vec::with_capacity(edges.pairs.len() * 2);
    for &(a, b) in &edges.pairs {
        if a != b {
            let (u, v) = (dense(a), dense(b));
            directed.push((u, v));
            directed.push((v, u));
        }
    }
    directed.sort_unstable();
    directed.dedup();
    UndirectedGraph::from_sorted_pairs(ids.len(), &directed)
}

/// Loads a graph from either a text edge list or a `.csrbin` cache, chosen
/// by file extension.
pub fn load_graph(path: impl AsRef<Path>) -> Result<UndirectedGraph, IngestError> {
    let path = path.as_ref();
    if path.extension().is_some_and(|e| e == CSR_EXTENSION) {
        load_csr(path)
    } else {
        Ok(build_undirected(&read_edge_list_file(path)?))
    }
}

pub fn write_csr<W: Write>(g: &UndirectedGraph, mut w: W) -> io::Result<()> {
    w.write_all(CSR_MAGIC)?;
    w.write_all(&CSR_VERSION.to_le_bytes())?;
    w.write_all(&(g.num_vertices() as u64).to_le_bytes())?;
    w.write_all(&(g.neighbor_array().len() as u64).to_le_bytes())?;
    for &o in g.offsets() {
        w.write_all(&o.to_le_bytes())?;
    }
    for &v in g.neighbor_array() {
        w.write_all(&v.to_le_bytes())?;
    }
    w.flush()
}

pub fn save_csr(g: &UndirectedGraph, path: impl AsRef<Path>) -> Result<(), IngestError> {
    write_csr(g, BufWriter::new(File::create(path)?))?;
    Ok(())
}

pub fn read_csr<R: Read>(mut r: R) -> Result<UndirectedGraph, IngestError> {
    let mut buf = Vec::new();
    r.read_to_end(&mut buf)?;
    decode_csr(&buf)
}

pub fn load_csr(path: impl AsRef<Path>) -> Result<UndirectedGraph, IngestError> {
    decode_csr(&std::fs::read(path)?)
}

fn decode_csr(buf: &[u8]) -> Result<UndirectedGraph, IngestError> {
    let format = |msg: String| IngestError::Format(msg);
    if buf.len() < HEADER_LEN {
        return Err(format(format!(
            "truncated header ({} of {HEADER_LEN} bytes)",
            buf.len()
        )));
    }
    if &buf[..8] != CSR_MAGIC {
        return Err(format("bad magic".into()));
    }
    let version = u32::from_le_bytes(buf[8..12].try_into().unwrap());
    if version != CSR_VERSION {
        return Err(format(format!("unsupported version {version}")));
    }
    let vertices = u64::from_le_bytes(buf[12..20].try_into().unwrap());
    let entries = u64::from_le_bytes(buf[20..28].try_into().unwrap());
    if vertices >= u32::MAX as u64 {
        return Err(format(format!("{vertices} vertices exceed the 32-bit id space")));
    }
    let expected = vertices
        .checked_add(1)
        .and_then(|n| n.checked_mul(8))
        .and_then(|o| entries.checked_mul(4).and_then(|e| o.checked_add(e)))
        .and_then(|body| body.checked_add(HEADER_LEN as u64))
        .ok_or_else(|| format("header sizes overflow".into()))?;
    if buf.len() as u64 != expected {
        return Err(format(format!(
            "expected {expected} bytes, file has {}",
            buf.len()
        )));
    }
    let body = &buf[HEADER_LEN..];
    let (off_bytes, nbr_bytes) = body.split_at((vertices as usize + 1) * 8);
    let offsets = off_bytes
        .chunks_exact(8)
        .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    let neighbors = nbr_bytes
        .chunks_exact(4)
        .map(|c| u32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    UndirectedGraph::from_csr(vertices as usize, offsets, neighbors)
        .map_err(|e| format(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{example, EXAMPLE_EDGES};

    fn parse(s: &str) -> Result<EdgeList, IngestError> {
        parse_edge_list(s.as_bytes())
    }

    #[test]
    fn parses_comments_and_separators() {
        assert_eq!(parse("# comment\n0 1\n1 2\n").unwrap().pairs, vec![(0, 1), (1, 2)]);
        assert_eq!(parse("0\t1\n").unwrap().pairs, vec![(0, 1)]);
        assert_eq!(parse("% mm\n\n  3   4  \n").unwrap().pairs, vec![(3, 4)]);
        assert!(parse("").unwrap().is_empty());
    }

    #[test]
    fn arity_and_token_errors_carry_line_numbers() {
        match parse("0 1 2\n") {
            Err(IngestError::Parse { line: 1, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse("0 1\n# x\n5\n") {
            Err(IngestError::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        match parse("0 1\n0 -1\n") {
            Err(IngestError::Parse { line: 2, message }) => assert!(message.contains("-1")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dedups_and_drops_self_loops() {
        let g = build_undirected(&vec![(0, 1), (1, 0), (1, 1), (0, 1)].into());
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn compacts_raw_ids() {
        let g = build_undirected(&vec![(5, 9)].into());
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.num_edges(), 1);
        assert!(g.has_edge(0, 1));
        // Ascending raw id order: 3 -> 0, 7 -> 1, 100 -> 2.
        let g = build_undirected(&vec![(100, 3), (7, 100)].into());
        assert_eq!(g.neighbors(2), &[0, 1]);
    }

    #[test]
    fn example_from_text() {
        let text: String = EXAMPLE_EDGES.iter().map(|(u, v)| format!("{u} {v}\n")).collect();
        let g = build_undirected(&parse(&text).unwrap());
        assert_eq!(g.num_vertices(), 7);
        assert_eq!(g.neighbor_array().len(), 22);
        assert_eq!(g, example());
    }

    #[test]
    fn csr_round_trip_in_memory() {
        let g = example();
        let mut buf = Vec::new();
        write_csr(&g, &mut buf).unwrap();
        assert_eq!(buf.len(), HEADER_LEN + 8 * 8 + 22 * 4);
        assert_eq!(read_csr(buf.as_slice()).unwrap(), g);

        let mut empty = Vec::new();
        write_csr(&UndirectedGraph::from_edges(0, &[]), &mut empty).unwrap();
        assert_eq!(read_csr(empty.as_slice()).unwrap().num_vertices(), 0);
    }

    #[test]
    fn csr_format_errors() {
        assert!(matches!(read_csr(&[][..]), Err(IngestError::Format(_))));
        let mut buf = Vec::new();
        write_csr(&example(), &mut buf).unwrap();

        let mut bad_magic = buf.clone();
        bad_magic[0] = b'X';
        assert!(matches!(read_csr(bad_magic.as_slice()), Err(IngestError::Format(m)) if m.contains("magic")));

        let mut bad_version = buf.clone();
        bad_version[8] = 9;
        assert!(matches!(read_csr(bad_version.as_slice()), Err(IngestError::Format(m)) if m.contains("version")));

        let truncated = &buf[..buf.len() - 1];
        assert!(matches!(read_csr(truncated), Err(IngestError::Format(_))));

        // Corrupt a neighbor id so the structure no longer validates.
        let mut corrupt = buf.clone();
        let last = corrupt.len() - 4;
        corrupt[last..].copy_from_slice(&77u32.to_le_bytes());
        assert!(matches!(read_csr(corrupt.as_slice()), Err(IngestError::Format(_))));
    }

    #[test]
    fn load_graph_dispatches_on_extension() {
        let dir = tempfile::tempdir().unwrap();
        let text = dir.path().join("g.txt");
        std::fs::write(&text, "0 1\n1 2\n").unwrap();
        let g = load_graph(&text).unwrap();
        let bin = dir.path().join("g.csrbin");
        save_csr(&g, &bin).unwrap();
        assert_eq!(load_graph(&bin).unwrap(), g);
    }
}
