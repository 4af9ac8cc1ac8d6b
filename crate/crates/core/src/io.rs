//! Graph ingestion: edge-list text and single-line graph6.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order representable by the one-byte graph6 size prefix.
pub const GRAPH6_MAX_N: usize = 62;

/// Parses the edge-list format:
///
/// ```text
/// n 4
/// 0 1
/// 1 2
/// ```
///
/// Blank lines and lines starting with `#` are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .enumerate()
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge list: missing `n <count>` header".into()))?;
    let mut head = header.split_whitespace();
    let n = match (head.next(), head.next(), head.next()) {
        (Some("n"), Some(count), None) => count
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad vertex count `{count}`")))?,
        _ => return Err(Error::Parse(format!("expected `n <count>` header, got `{header}`"))),
    };

    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let mut it = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<usize> {
            tok.and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse(format!("line {}: expected `u v`, got `{line}`", lineno + 1)))
        };
        let u = parse(it.next())?;
        let v = parse(it.next())?;
        if it.next().is_some() {
            return Err(Error::Parse(format!("line {}: trailing tokens in `{line}`", lineno + 1)));
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, &edges)
}

/// Parses a single graph6 line (optionally with the `>>graph6<<` header).
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let s = line.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    let first = *bytes
        .first()
        .ok_or_else(|| Error::Parse("empty graph6 string".into()))?;
    if first == 126 {
        return Err(Error::Parse(format!("graph6 graphs above {GRAPH6_MAX_N} vertices are not supported")));
    }
    if !(63..=126).contains(&first) {
        return Err(Error::Parse(format!("invalid graph6 size byte {first}")));
    }
    let n = (first - 63) as usize;
    let nbits = n * n.saturating_sub(1) / 2;
    let needed = nbits.div_ceil(6);
    let body = &bytes[1..];
    if body.len() != needed {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {needed} for n = {n}",
            body.len()
        )));
    }
    let mut bits = Vec::with_capacity(needed * 6);
    for &b in body {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse(format!("invalid graph6 byte {b}")));
        }
        let v = b - 63;
        for shift in (0..6).rev() {
            bits.push((v >> shift) & 1 == 1);
        }
    }
    if bits[nbits..].iter().any(|&b| b) {
        return Err(Error::Parse("graph6 padding bits must be zero".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

/// Encodes a graph as graph6 (no header, no newline).
pub fn to_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "graph6 encoding supports at most {GRAPH6_MAX_N} vertices"
        )));
    }
    let mut out = vec![(n + 63) as u8];
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

/// Parses a file with one graph6 string per line.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(parse_graph6)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_roundtrip() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(parse_edge_list(&c4.to_edge_list()).unwrap(), c4);
        let g = parse_edge_list("# comment\nn 3\n\n0 1\n1 2\n").unwrap();
        assert_eq!(g, Graph::path(3).unwrap());
    }

    #[test]
    fn edge_list_rejects_loops_and_duplicates() {
        assert!(parse_edge_list("n 3\n0 0\n").is_err());
        assert!(parse_edge_list("n 3\n0 1\n1 0\n").is_err());
        assert!(parse_edge_list("0 1\n").is_err());
        assert!(parse_edge_list("n 2\n0 x\n").is_err());
    }

    #[test]
    fn graph6_known_strings() {
        // encodings as produced by nauty geng / networkx
        assert_eq!(to_graph6(&Graph::complete(3).unwrap()).unwrap(), "Bw");
        assert_eq!(to_graph6(&Graph::complete(4).unwrap()).unwrap(), "C~");
        assert_eq!(to_graph6(&Graph::empty(1).unwrap()).unwrap(), "@");
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(parse_graph6(">>graph6<<C~\n").unwrap(), Graph::complete(4).unwrap());
        assert_eq!(parse_graph6("?").unwrap().n(), 0);
    }

    #[test]
    fn graph6_rejects_garbage() {
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("C~~").is_err());
        assert!(parse_graph6("Bx").is_err());
        assert!(parse_graph6("~??").is_err());
    }
}
