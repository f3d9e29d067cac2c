//! graph6 interchange.
//!
//! Layout: a size prefix `N(n)` followed by the upper triangle of the
//! adjacency matrix, column by column (`x(0,1) x(0,2) x(1,2) x(0,3) ...`),
//! packed big-endian into 6-bit groups, each offset by 63 and zero-padded.

use crate::graph::{CubicGraph, GraphError};

const HEADER: &str = ">>graph6<<";

/// Decodes one graph6 line into a cubic graph.
///
/// Surrounding whitespace and an optional `>>graph6<<` header are accepted.
pub fn parse_graph6(text: &str) -> Result<CubicGraph, GraphError> {
    let lists = decode_simple(text)?;
    CubicGraph::from_lists(lists)
}

/// Encodes a cubic graph as a header-free graph6 line (no trailing newline).
pub fn emit_graph6(g: &CubicGraph) -> String {
    let n = g.order();
    let mut out = encode_size(n);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        acc <<= 6 - nbits;
        out.push((acc + 63) as char);
    }
    out
}

fn malformed(msg: impl Into<String>) -> GraphError {
    GraphError::MalformedGraph6(msg.into())
}

fn encode_size(n: usize) -> String {
    let mut s = String::new();
    if n <= 62 {
        s.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        s.push('~');
        for shift in [12, 6, 0] {
            s.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        s.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            s.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
    s
}

/// Decodes any simple undirected graph into neighbor lists.
pub(crate) fn decode_simple(text: &str) -> Result<Vec<Vec<usize>>, GraphError> {
    let mut s = text.trim();
    if let Some(rest) = s.strip_prefix(HEADER) {
        s = rest;
    }
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(malformed("empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(malformed(format!(
                "byte {b:#04x} at position {i} outside 63..=126"
            )));
        }
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(malformed("truncated size prefix"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(malformed("truncated size prefix"));
        }
        let n = bytes[2..8]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, &bytes[8..])
    };
    let nbits = n
        .checked_mul(n.saturating_sub(1))
        .ok_or_else(|| malformed("order too large"))?
        / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(malformed(format!(
            "order {n} needs {expected} data bytes, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| -> bool {
        let byte = body[k / 6] - 63;
        (byte >> (5 - k % 6)) & 1 == 1
    };
    for k in nbits..expected * 6 {
        if bit(k) {
            return Err(malformed("non-zero padding bits"));
        }
    }
    let mut lists = vec![Vec::new(); n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                lists[i].push(j);
                lists[j].push(i);
            }
            k += 1;
        }
    }
    Ok(lists)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_round_trip() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g.order(), 4);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(g.has_edge(a, b), a != b);
            }
        }
        assert_eq!(emit_graph6(&g), "C~");
    }

    #[test]
    fn header_and_whitespace_accepted() {
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap().order(), 4);
    }

    #[test]
    fn four_cycle_is_not_cubic() {
        // 0-1-2-3-0: bits x01 x02 x12 x03 x13 x23 = 1 0 1 1 0 1
        let err = parse_graph6("Cl").unwrap_err();
        assert!(
            matches!(err, GraphError::NotCubic { degree: 2, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn rejects_bad_bytes_and_lengths() {
        assert!(matches!(
            parse_graph6(""),
            Err(GraphError::MalformedGraph6(_))
        ));
        assert!(matches!(
            parse_graph6("C~~"),
            Err(GraphError::MalformedGraph6(_))
        ));
        assert!(matches!(
            parse_graph6("C\u{7f}"),
            Err(GraphError::MalformedGraph6(_))
        ));
        assert!(matches!(
            parse_graph6("C "),
            Err(GraphError::MalformedGraph6(_))
        ));
        // padding bit set: n=3 has 3 data bits, low bits must be zero
        assert!(matches!(
            decode_simple("B@"),
            Err(GraphError::MalformedGraph6(_))
        ));
    }

    #[test]
    fn size_prefix_forms() {
        assert_eq!(encode_size(62), "}");
        assert_eq!(encode_size(63), "~??~");
        assert_eq!(encode_size(258_047), "~}~~");
        assert_eq!(encode_size(258_048).len(), 8);
    }

    #[test]
    fn two_disjoint_k4_is_disconnected() {
        assert_eq!(parse_graph6("G~?GW["), Err(GraphError::Disconnected));
    }
}
