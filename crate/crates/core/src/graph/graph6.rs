//! graph6 encoding: printable bytes 63..=126, a size header, then the upper
//! triangle of the adjacency matrix in column order
//! `x(0,1), x(0,2), x(1,2), x(0,3), ...`, six bits per byte, big-endian,
//! zero padded.

use thiserror::Error;

use super::{Graph, VertexSet, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty record")]
    Empty,
    #[error("byte {byte} at offset {offset} is outside the printable range 63..=126")]
    NonPrintable { byte: u8, offset: usize },
    #[error("malformed size header")]
    BadHeader,
    #[error("graph has {0} vertices, capacity is {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("record truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("trailing data: expected {expected} bytes, found {found}")]
    TrailingData { expected: usize, found: usize },
    #[error("non-zero padding bits")]
    NonZeroPadding,
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Decodes one graph6 record (no line terminator).
pub fn parse_graph6(bytes: &[u8]) -> Result<Graph, Graph6Error> {
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some((offset, &byte)) = bytes
        .iter()
        .enumerate()
        .find(|(_, &b)| !(63..=126).contains(&b))
    {
        return Err(Graph6Error::NonPrintable { byte, offset });
    }
    let (n, header) = decode_size(bytes)?;
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooManyVertices(n));
    }
    let expected = header + body_len(n);
    if bytes.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: bytes.len(),
        });
    }
    if bytes.len() > expected {
        return Err(Graph6Error::TrailingData {
            expected,
            found: bytes.len(),
        });
    }
    let body = &bytes[header..];
    let mut adj = vec![VertexSet::EMPTY; n];
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let last = body[k / 6] - 63;
        let pad_mask = (1u8 << (6 - k % 6)) - 1;
        if last & pad_mask != 0 {
            return Err(Graph6Error::NonZeroPadding);
        }
    }
    Ok(Graph::from_adjacency_unchecked(adj))
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let sixbits = |s: &[u8]| {
        s.iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
    };
    if bytes[0] != 126 {
        return Ok(((bytes[0] - 63) as usize, 1));
    }
    if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Graph6Error::BadHeader);
        }
        let n = sixbits(&bytes[2..8]);
        if n <= 258_047 {
            return Err(Graph6Error::BadHeader);
        }
        return Ok((n, 8));
    }
    if bytes.len() < 4 {
        return Err(Graph6Error::BadHeader);
    }
    let n = sixbits(&bytes[1..4]);
    if n < 63 {
        return Err(Graph6Error::BadHeader);
    }
    Ok((n, 4))
}

/// Encodes a graph as a graph6 record without line terminator.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + body_len(n));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0usize;
    for j in 1..n {
        let col = g.adj(j);
        for i in 0..j {
            acc = (acc << 1) | col.contains(i) as u8;
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
