//! HGR text format.
//!
//! ```text
//! # comment
//! k n
//! v1 v2 ... vk
//! ```
//!
//! Blank lines and lines starting with `#` are skipped. Edge ids must be
//! strictly increasing within a line.

use super::{Hypergraph, VertexId};
use crate::error::{Error, Result};

pub fn parse(text: &[u8]) -> Result<Hypergraph> {
    let text = std::str::from_utf8(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));

    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("missing \"k n\" header".into()))?;
    let header = numbers(lineno, header)?;
    let [k, n] = header[..] else {
        return Err(Error::Parse(format!("line {lineno}: header must be \"k n\"")));
    };
    if k < 2 {
        return Err(Error::BadArity(format!("line {lineno}: k = {k}, need k >= 2")));
    }

    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let ids = numbers(lineno, line)?;
        if ids.len() != k {
            return Err(Error::BadArity(format!(
                "line {lineno}: {} ids, expected {k}",
                ids.len()
            )));
        }
        if let Some(&v) = ids.iter().find(|&&v| v >= n) {
            return Err(Error::IdOutOfRange { id: v, limit: n });
        }
        if ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parse(format!("line {lineno}: ids not strictly increasing")));
        }
        edges.push(ids);
    }
    Hypergraph::new(k, n, edges)
}

fn numbers(lineno: usize, line: &str) -> Result<Vec<VertexId>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| Error::Parse(format!("line {lineno}: bad integer {tok:?}")))
        })
        .collect()
}

/// Canonical text: header, then edges in lexicographic order.
pub fn serialize(h: &Hypergraph) -> Vec<u8> {
    let mut edges: Vec<&[VertexId]> = h.edges().iter().map(|e| e.vertices()).collect();
    edges.sort_unstable();
    let mut out = format!("{} {}\n", h.k(), h.n());
    for e in edges {
        let line: Vec<String> = e.iter().map(ToString::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out.into_bytes()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_k43() {
        let h = parse(b"3 4\n0 1 3\n0 2 3\n1 2 3\n0 1 2").unwrap();
        assert_eq!((h.k(), h.n(), h.num_edges()), (3, 4, 4));
        // file order is kept
        assert_eq!(h.edges()[3].vertices(), &[0, 1, 2]);
    }

    #[test]
    fn comments_and_blank_lines() {
        let h = parse(b"# a comment\n\n2 1\n").unwrap();
        assert_eq!((h.k(), h.n(), h.num_edges()), (2, 1, 0));
    }

    #[test]
    fn rejects_malformed() {
        assert!(matches!(parse(b"3 3\n0 1 2\n0 1 2"), Err(Error::DuplicateEdge(_))));
        assert!(matches!(parse(b"3 3\n0 1\n"), Err(Error::BadArity(_))));
        assert!(matches!(parse(b"3 3\n0 1 3\n"), Err(Error::IdOutOfRange { id: 3, limit: 3 })));
        assert!(matches!(parse(b"3 3\n2 1 0\n"), Err(Error::Parse(_))));
        assert!(matches!(parse(b""), Err(Error::Parse(_))));
        assert!(matches!(parse(b"3\n"), Err(Error::Parse(_))));
        assert!(matches!(parse(b"3 x\n"), Err(Error::Parse(_))));
    }

    #[test]
    fn canonical_output() {
        let single = Hypergraph::complete(3, 3).unwrap();
        assert_eq!(serialize(&single), b"3 3\n0 1 2\n");
        let bare = Hypergraph::edgeless(2, 2).unwrap();
        assert_eq!(serialize(&bare), b"2 2\n");
        let k43 = parse(b"3 4\n0 1 3\n0 2 3\n1 2 3\n0 1 2").unwrap();
        assert_eq!(serialize(&k43), b"3 4\n0 1 2\n0 1 3\n0 2 3\n1 2 3\n");
    }
}
