//! graph6 codec (short form, n <= 62).
//!
//! One graph per text line: a header byte `n + 63` followed by the
//! column-major upper triangle of the adjacency matrix packed into 6-bit
//! groups, each group offset by 63 into the printable range, zero-padded.
//! The long form (`~` header) used by enumeration tools for n > 62 is
//! rejected; nothing in this crate needs graphs that large.

use crate::graph::Graph;
use crate::{Error, Result};

const OFFSET: u8 = 63;
const MAX_SHORT_N: usize = 62;

fn err(msg: impl Into<String>) -> Error {
    Error::Graph6(msg.into())
}

/// Parses one short-form graph6 line.
pub fn parse(line: &str) -> Result<Graph> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(err("empty line"));
    }
    if bytes[0] == b'~' {
        return Err(err("long form (n > 62) is not supported"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(err(format!(
                "byte {:#04x} at position {i} outside printable range 63..=126",
                b
            )));
        }
    }
    let n = (bytes[0] - OFFSET) as usize;
    if n == 0 {
        return Err(err("graph of order 0"));
    }
    let nbits = n * (n - 1) / 2;
    let expect = nbits.div_ceil(6);
    if bytes.len() - 1 != expect {
        return Err(err(format!(
            "malformed length: order {n} needs {expect} payload bytes, got {}",
            bytes.len() - 1
        )));
    }
    let mut g = Graph::empty(n)?;
    let mut idx = 0usize;
    for (v, u) in upper_triangle(n) {
        let byte = bytes[1 + idx / 6] - OFFSET;
        let bit = byte >> (5 - idx % 6) & 1;
        if bit == 1 {
            g.add_edge(u, v);
        }
        idx += 1;
    }
    // Padding bits after the triangle must be zero.
    for trailing in nbits..expect * 6 {
        let byte = bytes[1 + trailing / 6] - OFFSET;
        if byte >> (5 - trailing % 6) & 1 == 1 {
            return Err(err("nonzero trailing bits"));
        }
    }
    Ok(g)
}

/// Encodes a graph as a short-form graph6 line (no trailing newline).
pub fn encode(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_SHORT_N {
        return Err(err(format!("order {n} exceeds short-form limit 62")));
    }
    let nbits = n * (n - 1) / 2;
    let mut out = vec![0u8; 1 + nbits.div_ceil(6)];
    out[0] = n as u8 + OFFSET;
    for (idx, (v, u)) in upper_triangle(n).enumerate() {
        if g.has_edge(u, v) {
            out[1 + idx / 6] |= 1 << (5 - idx % 6);
        }
    }
    for b in &mut out[1..] {
        *b += OFFSET;
    }
    Ok(String::from_utf8(out).expect("printable ascii"))
}

/// Column-major upper-triangle order: (column v, row u) for v in 1..n,
/// u in 0..v.
fn upper_triangle(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |v| (0..v).map(move |u| (v, u)))
}
