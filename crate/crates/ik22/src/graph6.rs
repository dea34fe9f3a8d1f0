//! graph6 text encoding of simple graphs: order header, then the upper
//! triangle of the adjacency matrix packed into 6-bit printable chunks.

use crate::graph::{SimpleGraph, MAX_ORDER};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("byte {offset}: character {byte:#04x} outside graph6 range 63..=126")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("byte {offset}: truncated line, expected {expected} data bytes")]
    Truncated { offset: usize, expected: usize },
    #[error("byte {offset}: trailing bytes beyond encoded graph")]
    TrailingBytes { offset: usize },
    #[error("byte {offset}: nonzero padding bits")]
    NonzeroPadding { offset: usize },
    #[error("byte {offset}: order {order} exceeds supported maximum {MAX_ORDER}")]
    OrderTooLarge { offset: usize, order: usize },
}

pub fn encode(g: &SimpleGraph) -> String {
    let n = g.order();
    let mut bytes: Vec<u8> = Vec::new();
    if n <= 62 {
        bytes.push(n as u8 + 63);
    } else {
        // Long-form header: '~' then n in three 6-bit chunks, high first.
        bytes.push(126);
        bytes.push(((n >> 12) & 0x3f) as u8 + 63);
        bytes.push(((n >> 6) & 0x3f) as u8 + 63);
        bytes.push((n & 0x3f) as u8 + 63);
    }
    let mut chunk = 0u8;
    let mut nbits = 0;
    for v in 1..n {
        for u in 0..v {
            chunk = (chunk << 1) | u8::from(g.has_edge(u, v));
            nbits += 1;
            if nbits == 6 {
                bytes.push(chunk + 63);
                chunk = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        bytes.push((chunk << (6 - nbits)) + 63);
    }
    String::from_utf8(bytes).unwrap()
}

pub fn decode(line: &str) -> Result<SimpleGraph, Graph6Error> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    let check = |offset: usize| -> Result<u8, Graph6Error> {
        match bytes.get(offset) {
            None => Err(Graph6Error::Truncated { offset, expected: offset + 1 }),
            Some(&b) if !(63..=126).contains(&b) => Err(Graph6Error::InvalidByte { offset, byte: b }),
            Some(&b) => Ok(b - 63),
        }
    };
    let (n, mut offset) = if bytes.first() == Some(&126) {
        if bytes.get(1) == Some(&126) {
            return Err(Graph6Error::OrderTooLarge { offset: 1, order: usize::MAX });
        }
        let n = ((check(1)? as usize) << 12) | ((check(2)? as usize) << 6) | check(3)? as usize;
        (n, 4)
    } else {
        (check(0)? as usize, 1)
    };
    if n > MAX_ORDER {
        return Err(Graph6Error::OrderTooLarge { offset: 0, order: n });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let ndata = (nbits + 5) / 6;
    let mut g = SimpleGraph::empty(n);
    let mut bit = 0usize;
    for k in 0..ndata {
        let chunk = check(offset + k).map_err(|e| match e {
            Graph6Error::Truncated { offset, .. } => {
                Graph6Error::Truncated { offset, expected: ndata }
            }
            other => other,
        })?;
        for s in (0..6).rev() {
            let set = chunk >> s & 1 == 1;
            if bit < nbits {
                if set {
                    let (u, v) = edge_at(bit);
                    g.add_edge(u, v);
                }
            } else if set {
                return Err(Graph6Error::NonzeroPadding { offset: offset + k });
            }
            bit += 1;
        }
    }
    offset += ndata;
    if offset < bytes.len() {
        return Err(Graph6Error::TrailingBytes { offset });
    }
    Ok(g)
}

/// Bit positions run column by column over the upper triangle:
/// (0,1), (0,2), (1,2), (0,3), ...
fn edge_at(bit: usize) -> (usize, usize) {
    let mut v = 1usize;
    let mut base = 0usize;
    while base + v <= bit {
        base += v;
        v += 1;
    }
    (bit - base, v)
}

pub fn encode_lines<'a>(graphs: impl IntoIterator<Item = &'a SimpleGraph>) -> String {
    let mut out = String::new();
    for g in graphs {
        out.push_str(&encode(g));
        out.push('\n');
    }
    out
}

pub fn decode_lines(text: &str) -> Result<Vec<SimpleGraph>, Graph6Error> {
    text.lines().filter(|l| !l.is_empty()).map(decode).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn one_vertex_empty_graph() {
        // Direct application of the format: header byte 1+63 = '@', no data.
        assert_eq!(encode(&SimpleGraph::empty(1)), "@");
        let g = decode("@").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn zero_vertices() {
        assert_eq!(encode(&SimpleGraph::empty(0)), "?");
        assert_eq!(decode("?").unwrap().order(), 0);
    }

    #[test]
    fn triangle_is_bw() {
        // K3: bits 111, padded to 111000 -> 56+63 = 'w'; header 3+63 = 'B'.
        let k3 = SimpleGraph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(encode(&k3), "Bw");
        let p3 = SimpleGraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert_eq!(encode(&p3), "Bg");
    }

    #[test]
    fn k33_roundtrip() {
        let g = catalog::k33();
        let h = decode(&encode(&g)).unwrap();
        assert_eq!(g.edges(), h.edges());
        assert_eq!(g.order(), h.order());
    }

    #[test]
    fn garbage_rejected_with_offset() {
        match decode("garbage\x01") {
            Err(Graph6Error::InvalidByte { offset: 7, byte: 1 }) => {}
            other => panic!("expected InvalidByte at 7, got {other:?}"),
        }
        assert!(decode("g").is_err()); // truncated: order 40 needs data
        match decode("B ") {
            Err(Graph6Error::InvalidByte { offset: 1, .. }) => {}
            other => panic!("expected InvalidByte at 1, got {other:?}"),
        }
        match decode("BwBw") {
            Err(Graph6Error::TrailingBytes { offset: 2 }) => {}
            other => panic!("expected TrailingBytes at 2, got {other:?}"),
        }
    }

    #[test]
    fn random_roundtrip() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..300 {
            let n = rng.gen_range(0..=20);
            let mut g = SimpleGraph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.3) {
                        g.add_edge(u, v);
                    }
                }
            }
            let h = decode(&encode(&g)).unwrap();
            assert_eq!(g.edges(), h.edges());
        }
    }
}
