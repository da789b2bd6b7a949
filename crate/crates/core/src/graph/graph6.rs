//! graph6 encoding for graphs of order at most 62.
//!
//! One header byte `n + 63`, then the upper triangle of the adjacency matrix
//! in column order `(0,1), (0,2), (1,2), (0,3), ...`, six bits per byte,
//! most significant bit first, zero padded, each sextet offset by 63.

use thiserror::Error;

use super::{Graph, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("bad graph6 header byte {0:#04x}")]
    BadHeader(u8),
    #[error("graph6 order {0} unsupported (limit {MAX_ORDER})")]
    UnsupportedOrder(usize),
    #[error("graph6 body truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("invalid graph6 byte {byte:#04x} at offset {offset}")]
    BadByte { byte: u8, offset: usize },
    #[error("{0} trailing bytes after graph6 body")]
    TrailingGarbage(usize),
    #[error("nonzero padding bits in final graph6 byte")]
    NonZeroPadding,
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Parses one graph6 line. A single trailing `\n` or `\r\n` is accepted.
pub fn from_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text
        .strip_suffix('\n')
        .map(|t| t.strip_suffix('\r').unwrap_or(t))
        .unwrap_or(text)
        .as_bytes();
    let (&header, body) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    if !(63..=126).contains(&header) {
        return Err(Graph6Error::BadHeader(header));
    }
    let n = (header - 63) as usize;
    if n > MAX_ORDER {
        // 126 introduces the multi-byte order form
        return Err(Graph6Error::UnsupportedOrder(n));
    }
    let expected = body_len(n);
    if body.len() < expected {
        return Err(Graph6Error::Truncated {
            expected,
            found: body.len(),
        });
    }
    if body.len() > expected {
        return Err(Graph6Error::TrailingGarbage(body.len() - expected));
    }
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Graph6Error::BadByte {
                byte: b,
                offset: i + 1,
            });
        }
    }

    let mut g = Graph::empty(n).expect("order checked above");
    let mut k = 0usize;
    for b in 1..n {
        for a in 0..b {
            let sextet = body[k / 6] - 63;
            if sextet >> (5 - k % 6) & 1 == 1 {
                g.add_edge(a, b).expect("indices in range");
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) {
        let pad = 6 - k % 6;
        if (body[k / 6] - 63) & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonZeroPadding);
        }
    }
    Ok(g)
}

/// Encodes a graph as graph6. Total because [`Graph`] never exceeds 62 vertices.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(1 + body_len(n));
    out.push(n as u8 + 63);
    let mut sextet = 0u8;
    let mut k = 0usize;
    for b in 1..n {
        for a in 0..b {
            sextet = sextet << 1 | g.has_edge(a, b) as u8;
            k += 1;
            if k.is_multiple_of(6) {
                out.push(sextet + 63);
                sextet = 0;
            }
        }
    }
    if !k.is_multiple_of(6) {
        out.push((sextet << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Straight transcription of the format: collect the bit string, pad it,
    /// cut it into sextets.
    fn reference_encode(n: usize, edges: &[(usize, usize)]) -> String {
        let mut bitstring = Vec::new();
        for j in 0..n {
            for i in 0..j {
                bitstring.push(edges.contains(&(i, j)) || edges.contains(&(j, i)));
            }
        }
        while bitstring.len() % 6 != 0 {
            bitstring.push(false);
        }
        let mut s = String::new();
        s.push(char::from(n as u8 + 63));
        for chunk in bitstring.chunks(6) {
            let v = chunk.iter().fold(0u8, |acc, &bit| acc * 2 + bit as u8);
            s.push(char::from(v + 63));
        }
        s
    }

    #[test]
    fn reference_encoder_values() {
        assert_eq!(reference_encode(2, &[(0, 1)]), "A_");
        assert_eq!(reference_encode(3, &[(0, 1), (0, 2), (1, 2)]), "Bw");
        assert_eq!(reference_encode(4, &[(0, 1), (2, 3)]), "C`");
        assert_eq!(reference_encode(1, &[]), "@");
    }

    #[test]
    fn decodes_known_strings() {
        assert_eq!(from_graph6("A_").unwrap(), Graph::complete(2).unwrap());
        assert_eq!(from_graph6("Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(
            from_graph6("C`").unwrap(),
            Graph::matching_graph(2).unwrap()
        );
        assert_eq!(from_graph6("A_\n").unwrap(), Graph::complete(2).unwrap());
    }

    #[test]
    fn encodes_known_graphs() {
        assert_eq!(to_graph6(&Graph::complete(2).unwrap()), "A_");
        assert_eq!(to_graph6(&Graph::empty(1).unwrap()), "@");
        assert_eq!(to_graph6(&Graph::complete(3).unwrap()), "Bw");
        assert_eq!(to_graph6(&Graph::empty(0).unwrap()), "?");
    }

    #[test]
    fn matches_reference_on_larger_graphs() {
        let edges = [(0, 5), (1, 2), (2, 7), (3, 6), (4, 5), (6, 7), (0, 7)];
        let g = Graph::from_edges(8, &edges).unwrap();
        assert_eq!(to_graph6(&g), reference_encode(8, &edges));
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert_eq!(from_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(from_graph6(" _"), Err(Graph6Error::BadHeader(b' ')));
        assert!(matches!(
            from_graph6("C"),
            Err(Graph6Error::Truncated {
                expected: 1,
                found: 0
            })
        ));
        assert_eq!(from_graph6("A__"), Err(Graph6Error::TrailingGarbage(1)));
        assert_eq!(from_graph6("~??"), Err(Graph6Error::UnsupportedOrder(63)));
        assert!(matches!(
            from_graph6("B "),
            Err(Graph6Error::BadByte { offset: 1, .. })
        ));
        // K2 uses one bit; the remaining five must be zero
        assert_eq!(from_graph6("A`"), Err(Graph6Error::NonZeroPadding));
    }
}
