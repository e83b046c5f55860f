//! The `.ecg` instance format:
//!
//! ```text
//! ecg 1
//! <n> <e>
//! <u> <v> <c>      (e lines, u < v)
//! ```
//!
//! Lines starting with `#` are comments. Emission is canonical: edges in
//! lexicographic order, single spaces, every line newline-terminated.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Color, Edge, EdgeColoredGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected header `ecg 1`")]
    BadHeader,
    #[error("expected `<n> <e>`")]
    BadCounts,
    #[error("expected `<u> <v> <color>`")]
    BadEdge,
    #[error("edge endpoints must satisfy u < v")]
    Unordered,
    #[error("vertex {0} out of range")]
    OutOfRange(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    Duplicate(Vertex, Vertex),
    #[error("expected {expected} edge lines, found {found}")]
    CountMismatch { expected: usize, found: usize },
}

fn fail(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn numbers<T: std::str::FromStr>(body: &str, count: usize) -> Option<Vec<T>> {
    let parts: Vec<&str> = body.split_ascii_whitespace().collect();
    if parts.len() != count {
        return None;
    }
    parts.iter().map(|p| p.parse().ok()).collect()
}

/// Parses an instance; errors carry 1-based line numbers.
pub fn parse_instance(text: &str) -> Result<EdgeColoredGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.starts_with('#') && !l.trim().is_empty());

    match lines.next() {
        Some((_, l)) if l.split_ascii_whitespace().eq(["ecg", "1"]) => {}
        Some((line, _)) => return Err(fail(line, ParseErrorKind::BadHeader)),
        None => return Err(fail(1, ParseErrorKind::BadHeader)),
    }
    let (count_line, n, e) = match lines.next() {
        Some((line, l)) => match numbers::<usize>(l, 2) {
            Some(v) => (line, v[0], v[1]),
            None => return Err(fail(line, ParseErrorKind::BadCounts)),
        },
        None => return Err(fail(text.lines().count() + 1, ParseErrorKind::BadCounts)),
    };

    let mut edges: Vec<Edge> = Vec::with_capacity(e);
    let mut seen = std::collections::BTreeSet::new();
    let mut last_line = count_line;
    for (line, l) in lines {
        last_line = line;
        if edges.len() == e {
            return Err(fail(
                line,
                ParseErrorKind::CountMismatch {
                    expected: e,
                    found: edges.len() + 1,
                },
            ));
        }
        let parts: Vec<&str> = l.split_ascii_whitespace().collect();
        let [u, v, c] = parts.as_slice() else {
            return Err(fail(line, ParseErrorKind::BadEdge));
        };
        let (Ok(u), Ok(v), Ok(c)) = (u.parse::<Vertex>(), v.parse::<Vertex>(), c.parse::<Color>()) else {
            return Err(fail(line, ParseErrorKind::BadEdge));
        };
        if u >= v {
            return Err(fail(line, ParseErrorKind::Unordered));
        }
        if v >= n {
            return Err(fail(line, ParseErrorKind::OutOfRange(v)));
        }
        if !seen.insert((u, v)) {
            return Err(fail(line, ParseErrorKind::Duplicate(u, v)));
        }
        edges.push(Edge::new(u, v, c));
    }
    if edges.len() != e {
        return Err(fail(
            last_line,
            ParseErrorKind::CountMismatch {
                expected: e,
                found: edges.len(),
            },
        ));
    }
    Ok(EdgeColoredGraph::new(n, edges).expect("validated above"))
}

/// Canonical text for `g`. Deleted vertices are written as isolated ones.
pub fn emit_instance(g: &EdgeColoredGraph) -> String {
    let mut out = format!("ecg 1\n{} {}\n", g.n_vertices(), g.edge_count());
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.color).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let g = parse_instance("ecg 1\n2 1\n0 1 7\n").unwrap();
        assert_eq!(g.edges(), &[Edge::new(0, 1, 7)]);
        let g = parse_instance("ecg 1\n3 0\n").unwrap();
        assert_eq!((g.n_vertices(), g.edge_count()), (3, 0));
        assert_eq!(
            parse_instance("ecg 1\n2 1\n1 0 7\n"),
            Err(fail(3, ParseErrorKind::Unordered))
        );
    }

    #[test]
    fn emit_examples() {
        let g = EdgeColoredGraph::new(2, [(0, 1, 7)]).unwrap();
        assert_eq!(emit_instance(&g), "ecg 1\n2 1\n0 1 7\n");
        assert_eq!(emit_instance(&EdgeColoredGraph::empty(3)), "ecg 1\n3 0\n");
    }

    #[test]
    fn comments_are_ignored() {
        let text = "# made by hand\necg 1\n# n e\n3 2\n0 1 4\n# middle\n1 2 4\n";
        let g = parse_instance(text).unwrap();
        assert_eq!(emit_instance(&g), "ecg 1\n3 2\n0 1 4\n1 2 4\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("ecg 2\n2 0\n", fail(1, ParseErrorKind::BadHeader)),
            ("", fail(1, ParseErrorKind::BadHeader)),
            ("ecg 1\n2\n", fail(2, ParseErrorKind::BadCounts)),
            ("ecg 1\n", fail(2, ParseErrorKind::BadCounts)),
            ("ecg 1\n3 1\n0 1\n", fail(3, ParseErrorKind::BadEdge)),
            ("ecg 1\n3 1\n0 x 1\n", fail(3, ParseErrorKind::BadEdge)),
            ("ecg 1\n3 1\n0 3 1\n", fail(3, ParseErrorKind::OutOfRange(3))),
            ("ecg 1\n3 1\n1 1 1\n", fail(3, ParseErrorKind::Unordered)),
            ("ecg 1\n3 2\n0 1 1\n0 1 2\n", fail(4, ParseErrorKind::Duplicate(0, 1))),
            (
                "ecg 1\n3 2\n0 1 1\n",
                fail(3, ParseErrorKind::CountMismatch { expected: 2, found: 1 }),
            ),
            (
                "ecg 1\n3 1\n0 1 1\n1 2 1\n",
                fail(4, ParseErrorKind::CountMismatch { expected: 1, found: 2 }),
            ),
        ];
        for (text, expected) in cases {
            assert_eq!(parse_instance(text), Err(expected), "{text:?}");
        }
    }

    #[test]
    fn unsorted_input_emits_sorted() {
        let g = parse_instance("ecg 1\n4 2\n2 3 1\n0 1 5\n").unwrap();
        assert_eq!(emit_instance(&g), "ecg 1\n4 2\n0 1 5\n2 3 1\n");
    }
}
