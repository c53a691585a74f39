//! graph6 serialization and canonical stage files.
//!
//! The graph6 line format: a size byte `n + 63` (single-byte sizes only,
//! so `n <= 62`), then the upper-triangle adjacency bits in column order
//! `(0,1),(0,2),(1,2),(0,3),...`, packed six per byte most significant bit
//! first, each byte offset by 63, zero-padded to a full byte.
//!
//! Stage files hold one graph per line, each line the graph6 encoding of
//! the canonical form of its isomorphism class, sorted ascending. Writing
//! the same set of graphs in any order therefore produces identical bytes.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use crate::canon::{canonical_certificate, canonical_form};
use crate::graph::Graph;

/// Largest order encodable with a single-byte size header.
pub const MAX_GRAPH6_VERTICES: usize = 62;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum G6Error {
    #[error("graph6 single-byte header supports at most 62 vertices, got {0}")]
    TooLarge(usize),
    #[error("empty graph6 line")]
    Empty,
    #[error("graph6 byte {byte:#x} at position {pos} outside 63..=126")]
    BadByte { byte: u8, pos: usize },
    #[error("graph6 line has {got} data bytes, expected {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("graph6 padding bits are not zero")]
    BadPadding,
}

/// Encodes a graph as a graph6 line (no trailing newline).
pub fn encode_graph6(g: &Graph) -> Result<String, G6Error> {
    let n = g.n();
    if n > MAX_GRAPH6_VERTICES {
        return Err(G6Error::TooLarge(n));
    }
    let nbits = n * (n - 1) / 2;
    let mut out = Vec::with_capacity(1 + nbits.div_ceil(6));
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut filled = 0usize;
    for v in 1..n {
        for u in 0..v {
            acc <<= 1;
            if g.has_edge(u, v) {
                acc |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Decodes a graph6 line, rejecting nonzero padding bits.
pub fn decode_graph6(line: &str) -> Result<Graph, G6Error> {
    decode_graph6_impl(line, true)
}

/// Decodes a graph6 line, tolerating nonzero padding bits in third-party
/// files.
pub fn decode_graph6_lenient(line: &str) -> Result<Graph, G6Error> {
    decode_graph6_impl(line, false)
}

fn decode_graph6_impl(line: &str, strict: bool) -> Result<Graph, G6Error> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(G6Error::Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(G6Error::BadByte { byte: b, pos });
        }
    }
    let n = (bytes[0] - 63) as usize;
    if n > MAX_GRAPH6_VERTICES {
        return Err(G6Error::TooLarge(n));
    }
    if n == 0 {
        // the 64-vertex and larger multi-byte headers start with '~' and
        // are out of scope; n = 0 has no valid Graph either
        return Err(G6Error::BadByte { byte: bytes[0], pos: 0 });
    }
    let nbits = n * (n - 1) / 2;
    let expected = nbits.div_ceil(6);
    if bytes.len() - 1 != expected {
        return Err(G6Error::BadLength {
            expected,
            got: bytes.len() - 1,
        });
    }
    let mut edges = Vec::new();
    let mut idx = 0usize;
    for v in 1..n {
        for u in 0..v {
            let b = bytes[1 + idx / 6] - 63;
            if b & (0x20 >> (idx % 6)) != 0 {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    if strict && nbits % 6 != 0 {
        let last = bytes[bytes.len() - 1] - 63;
        let pad = 6 - (nbits % 6);
        if last & ((1 << pad) - 1) != 0 {
            return Err(G6Error::BadPadding);
        }
    }
    Ok(Graph::from_edges(n, &edges).expect("decoded edges are in range"))
}

#[derive(Debug, Error)]
pub enum StageFileError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {source}")]
    Decode {
        path: String,
        line: usize,
        #[source]
        source: G6Error,
    },
}

/// Writes a stage file: canonical forms, one graph6 line each, ascending
/// certificate order. Duplicate isomorphism classes collapse.
pub fn write_stage_file(path: &Path, graphs: &[Graph]) -> Result<(), StageFileError> {
    let bytes = stage_file_bytes(graphs);
    fs::write(path, bytes).map_err(|source| StageFileError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// The exact bytes [`write_stage_file`] would write.
pub fn stage_file_bytes(graphs: &[Graph]) -> Vec<u8> {
    let mut certs: Vec<_> = graphs.iter().map(canonical_certificate).collect();
    certs.sort_unstable();
    certs.dedup();
    let mut out = Vec::new();
    for cert in &certs {
        let line = encode_graph6(&cert.to_graph()).expect("stage graphs stay under 62 vertices");
        out.extend_from_slice(line.as_bytes());
        out.push(b'\n');
    }
    out
}

/// Reads a stage file: one strict graph6 line per graph. Blank lines and
/// `#` comments are skipped.
pub fn read_stage_file(path: &Path) -> Result<Vec<Graph>, StageFileError> {
    let text = fs::read_to_string(path).map_err(|source| StageFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let g = decode_graph6(line).map_err(|source| StageFileError::Decode {
            path: path.display().to_string(),
            line: i + 1,
            source,
        })?;
        out.push(g);
    }
    Ok(out)
}

/// Writes graphs as graph6 lines to any writer, preserving order and
/// labeling (no canonicalization). Used by the CLI for ad-hoc output.
pub fn write_graph6_lines<W: Write>(mut w: W, graphs: &[Graph]) -> io::Result<()> {
    for g in graphs {
        let line = encode_graph6(g).map_err(io::Error::other)?;
        writeln!(w, "{line}")?;
    }
    Ok(())
}

// canonical_form is re-exported through the canon module; the stage writer
// goes through certificates so files never depend on input labelings
const _: fn(&Graph) -> Graph = canonical_form;
