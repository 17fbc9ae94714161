//! graph6 encoding and decoding.
//!
//! Bit-exact per the standard format: the vertex count in 6-bit chunks
//! offset by 63, then the upper triangle of the adjacency matrix in
//! column-major order — bits (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ... —
//! packed six per character, zero-padded.

use thiserror::Error;

use crate::graph::Graph;

const OFFSET: u8 = 63;
const MAX_SHORT: usize = 62;
const MAX_LONG: usize = 258_047; // 2^18 - 1

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("invalid graph6 character {byte:#04x} at position {pos}")]
    InvalidChar { pos: usize, byte: u8 },
    #[error("truncated graph6 string: expected {expected} data characters, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data after graph6 string: expected {expected} data characters, found {found}")]
    TrailingData { expected: usize, found: usize },
    #[error("nonzero padding bits in graph6 string")]
    NonzeroPadding,
    #[error("vertex count {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
}

fn data_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

/// Encodes a graph as a graph6 string. Supports up to 258047 vertices.
pub fn emit_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n <= MAX_SHORT {
        out.push(n as u8 + OFFSET);
    } else if n <= MAX_LONG {
        out.push(b'~');
        out.push(((n >> 12) & 0x3f) as u8 + OFFSET);
        out.push(((n >> 6) & 0x3f) as u8 + OFFSET);
        out.push((n & 0x3f) as u8 + OFFSET);
    } else {
        return Err(Graph6Error::TooLarge { n, max: MAX_LONG });
    }
    if n > 0 {
        let mut chunk = 0u8;
        let mut filled = 0;
        for v in 1..n as u32 {
            for u in 0..v {
                chunk = (chunk << 1) | u8::from(g.has_edge(u, v));
                filled += 1;
                if filled == 6 {
                    out.push(chunk + OFFSET);
                    chunk = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push((chunk << (6 - filled)) + OFFSET);
        }
    }
    Ok(String::from_utf8(out).expect("graph6 output is ASCII"))
}

/// Decodes a graph6 string.
pub fn parse_graph6(s: &str) -> Result<Graph, Graph6Error> {
    let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(Graph6Error::InvalidChar { pos, byte: b });
        }
    }
    let (n, body) = if bytes[0] == b'~' {
        if bytes.len() >= 2 && bytes[1] == b'~' {
            // 8-byte form encodes n up to 2^36; outside supported range.
            return Err(Graph6Error::TooLarge {
                n: usize::MAX,
                max: MAX_LONG,
            });
        }
        if bytes.len() < 4 {
            return Err(Graph6Error::Truncated {
                expected: 4,
                found: bytes.len(),
            });
        }
        let n = (((bytes[1] - OFFSET) as usize) << 12)
            | (((bytes[2] - OFFSET) as usize) << 6)
            | ((bytes[3] - OFFSET) as usize);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - OFFSET) as usize, &bytes[1..])
    };

    let expected = if n == 0 { 0 } else { data_len(n) };
    match body.len().cmp(&expected) {
        std::cmp::Ordering::Less => {
            return Err(Graph6Error::Truncated {
                expected,
                found: body.len(),
            })
        }
        std::cmp::Ordering::Greater => {
            return Err(Graph6Error::TrailingData {
                expected,
                found: body.len(),
            })
        }
        std::cmp::Ordering::Equal => {}
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut bit_index = 0usize;
    'outer: for v in 1..n as u32 {
        for u in 0..v {
            if bit_index >= nbits {
                break 'outer;
            }
            let byte = body[bit_index / 6] - OFFSET;
            let bit = (byte >> (5 - (bit_index % 6))) & 1;
            if bit == 1 {
                edges.push((u, v));
            }
            bit_index += 1;
        }
    }
    // Padding bits beyond the triangle must be zero.
    if nbits % 6 != 0 && !body.is_empty() {
        let last = body[body.len() - 1] - OFFSET;
        let pad = 6 - (nbits % 6);
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    Ok(Graph::from_edges(n, edges))
}
