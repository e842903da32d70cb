//! graph6 interchange for graphs with 1 to 62 vertices.
//!
//! Layout: one byte `n + 63`, then the upper triangle of the adjacency matrix
//! in column order `(0,1), (0,2), (1,2), (0,3), ...`, six bits per byte,
//! most significant bit first, zero padded, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const HEADER: &str = ">>graph6<<";
pub const MAX_GRAPH6_VERTICES: usize = 62;

fn payload_len(n: usize) -> usize {
    (n * (n - 1) / 2).div_ceil(6)
}

pub fn encode(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_GRAPH6_VERTICES {
        return Err(Error::Graph6(format!(
            "{n} vertices, only 1..={MAX_GRAPH6_VERTICES} supported"
        )));
    }
    let mut out = Vec::with_capacity(1 + payload_len(n));
    out.push(n as u8 + 63);
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Decodes one graph6 string. A leading `>>graph6<<` header and trailing line
/// terminators are accepted.
pub fn decode(text: &[u8]) -> Result<Graph> {
    let mut bytes = text.strip_prefix(HEADER.as_bytes()).unwrap_or(text);
    while let [rest @ .., b'\n' | b'\r'] = bytes {
        bytes = rest;
    }
    let (&first, payload) = bytes
        .split_first()
        .ok_or_else(|| Error::Graph6("empty input".into()))?;
    check_byte(first, 0)?;
    if first == 126 {
        return Err(Error::Graph6(format!(
            "multi-byte size field: graphs above {MAX_GRAPH6_VERTICES} vertices are unsupported"
        )));
    }
    let n = (first - 63) as usize;
    if n == 0 {
        return Err(Error::Graph6("graph with zero vertices".into()));
    }
    let expected = payload_len(n);
    if payload.len() < expected {
        return Err(Error::Graph6(format!(
            "truncated payload: {} bytes, {expected} expected for n = {n}",
            payload.len()
        )));
    }
    if payload.len() > expected {
        return Err(Error::Graph6(format!(
            "{} trailing bytes after payload for n = {n}",
            payload.len() - expected
        )));
    }
    for (i, &b) in payload.iter().enumerate() {
        check_byte(b, i + 1)?;
    }

    let mut g = Graph::empty(n)?;
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            bit += 1;
        }
    }
    if !bit.is_multiple_of(6) {
        let last = payload[expected - 1] - 63;
        if last & ((1u8 << (6 - bit % 6)) - 1) != 0 {
            return Err(Error::Graph6("nonzero padding bits".into()));
        }
    }
    Ok(g)
}

fn check_byte(b: u8, pos: usize) -> Result<()> {
    if (63..=126).contains(&b) {
        Ok(())
    } else {
        Err(Error::Graph6(format!("byte {b} at offset {pos} outside 63..=126")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fixtures() {
        assert_eq!(encode(&Graph::complete(3).unwrap()).unwrap(), "Bw");
        assert_eq!(encode(&Graph::empty(1).unwrap()).unwrap(), "@");
        assert_eq!(encode(&Graph::cycle(4).unwrap()).unwrap(), "Cl");
        assert_eq!(decode(b"Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(decode(b">>graph6<<Cl\n").unwrap(), Graph::cycle(4).unwrap());
    }

    #[test]
    fn rejects_malformed() {
        assert!(decode(b"").is_err());
        assert!(decode(b"?").is_err());
        assert!(decode(b"C").is_err()); // truncated
        assert!(decode(b"Clx").is_err()); // trailing
        assert!(decode(b"B ").is_err()); // byte 32
        assert!(decode(b"~").is_err()); // n > 62
        assert!(decode(b"Bx").is_err()); // padding bit set
        assert!(encode(&Graph::empty(63).unwrap()).is_err());
    }
}
