//! graph6 encoding: an order prefix followed by the upper triangle of the
//! adjacency matrix in column-major order, six bits per printable byte.

use thiserror::Error;

use super::{Graph, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("byte {byte:#04x} at offset {offset} is outside 63..=126")]
    InvalidChar { offset: usize, byte: u8 },
    #[error("payload truncated: expected {expected} bytes, found {found}")]
    TruncatedPayload { expected: usize, found: usize },
    #[error("order {0} exceeds the maximum of {MAX_ORDER}")]
    OrderTooLarge(u64),
    #[error("padding bits in the final byte are not zero")]
    NonzeroPadding,
    #[error("{0} unexpected bytes after the payload")]
    TrailingBytes(usize),
}

/// Decodes one graph6 string. A leading `>>graph6<<` header and trailing
/// line terminators are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::InvalidChar { offset, byte });
        }
    }
    let (n, payload) = decode_order(bytes)?;
    if n > MAX_ORDER as u64 {
        return Err(Graph6Error::OrderTooLarge(n));
    }
    let n = n as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if payload.len() < expected {
        return Err(Graph6Error::TruncatedPayload {
            expected,
            found: payload.len(),
        });
    }
    if payload.len() > expected {
        return Err(Graph6Error::TrailingBytes(payload.len() - expected));
    }

    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - 63;
            if byte & (0x20 >> (k % 6)) != 0 {
                g.set_edge(i, j);
            }
            k += 1;
        }
    }
    if !nbits.is_multiple_of(6) {
        let last = payload[expected - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding);
        }
    }
    Ok(g)
}

fn decode_order(bytes: &[u8]) -> Result<(u64, &[u8]), Graph6Error> {
    let truncated = |expected| Graph6Error::TruncatedPayload {
        expected,
        found: bytes.len(),
    };
    match bytes {
        [] => Err(truncated(1)),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(truncated(8));
            }
            Ok((pack(&rest[..6]), &rest[6..]))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(truncated(4));
            }
            Ok((pack(&rest[..3]), &rest[3..]))
        }
        [b, rest @ ..] => Ok(((b - 63) as u64, rest)),
    }
}

fn pack(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0, |acc, &b| (acc << 6) | (b - 63) as u64)
}

/// Encodes `g` under its current labeling, without header or newline.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let nbits = n * n.saturating_sub(1) / 2;
    let mut out = Vec::with_capacity(1 + nbits.div_ceil(6));
    // n <= 32, so the short single-byte form always applies.
    out.push(n as u8 + 63);
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses a graph6 file body: one graph per non-empty line, each returned
/// with its 1-based line number. A bare header line is skipped. Errors carry
/// the line number too.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<(usize, Graph)>, (usize, Graph6Error)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && *line != HEADER)
        .map(|(no, line)| parse_graph6(line).map(|g| (no, g)).map_err(|e| (no, e)))
        .collect()
}
