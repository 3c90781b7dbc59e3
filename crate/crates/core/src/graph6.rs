//! graph6 encoding (the nauty/networkx printable format).
//!
//! Order `N` is written as one byte `N + 63` for `N ≤ 62`, as `~` plus three
//! 6-bit groups for `N ≤ 258047`, otherwise `~~` plus six groups. The upper
//! triangle follows column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`),
//! six bits per byte, zero padded, each byte offset by 63.

use thiserror::Error;

use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("malformed order header")]
    BadHeader,
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    BadByte { byte: u8, offset: usize },
    #[error("truncated payload: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("{0} trailing bytes after payload")]
    TrailingGarbage(usize),
    #[error("non-zero padding bits in final payload byte")]
    NonZeroPadding,
}

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::new();
    encode_order(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 output is ASCII")
}

fn sextet(bytes: &[u8], offset: usize) -> Result<usize, Graph6Error> {
    let b = bytes[offset];
    if !(63..=126).contains(&b) {
        return Err(Graph6Error::BadByte { byte: b, offset });
    }
    Ok((b - 63) as usize)
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let (n, mut pos) = if bytes[0] != 126 {
        (sextet(bytes, 0)?, 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Graph6Error::BadHeader);
        }
        let mut n = 0;
        for i in 2..8 {
            n = (n << 6) | sextet(bytes, i)?;
        }
        (n, 8)
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::BadHeader);
        }
        let mut n = 0;
        for i in 1..4 {
            n = (n << 6) | sextet(bytes, i)?;
        }
        (n, 4)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let payload = &bytes[pos..];
    if payload.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: payload.len(),
        });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingGarbage(payload.len() - expected));
    }
    let mut g = Graph::new(n);
    let mut k = 0;
    let mut cur = 0;
    for j in 1..n {
        for i in 0..j {
            if k % 6 == 0 {
                cur = sextet(bytes, pos)?;
                pos += 1;
            }
            if cur >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let used = k % 6;
        if cur & ((1 << (6 - used)) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding);
        }
    }
    Ok(g)
}

/// Newline-separated graph6 records; blank lines are skipped.
pub fn parse_graph6_file(text: &str) -> Result<Vec<Graph>, (usize, Graph6Error)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| parse_graph6(l.trim()).map_err(|e| (i + 1, e)))
        .collect()
}

pub fn write_graph6_file(graphs: &[Graph]) -> String {
    let mut s = String::new();
    for g in graphs {
        s.push_str(&write_graph6(g));
        s.push('\n');
    }
    s
}
