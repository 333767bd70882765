use std::collections::BTreeSet;

use super::{EdgeId, Graph, VertexId};
use crate::error::{Error, Result};

/// Parses the line-oriented graph format:
///
/// ```text
/// # theta graph
/// v 2
/// e 1 1 2
/// e 2 1 2
/// e 3 1 2
/// ```
///
/// `v <n>` declares vertices `1..=n`, `e <id> <u> <v>` declares an edge
/// (`u == v` is a loop) and `#` starts a comment. Edge ids must be `1..=m`.
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut n: Option<u32> = None;
    let mut edges: Vec<(EdgeId, VertexId, VertexId, usize)> = Vec::new();
    let mut seen = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |msg: &str| Error::Syntax {
            line: line_no,
            msg: msg.to_string(),
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| s.parse::<u32>().map_err(|_| syntax(&format!("not a number: {s:?}")));
        match fields[0] {
            "v" => {
                if fields.len() != 2 {
                    return Err(syntax("expected `v <n>`"));
                }
                if n.is_some() {
                    return Err(syntax("vertex count declared twice"));
                }
                n = Some(num(fields[1])?);
            }
            "e" => {
                if fields.len() != 4 {
                    return Err(syntax("expected `e <id> <u> <v>`"));
                }
                let e = EdgeId(num(fields[1])?);
                if e.0 == 0 {
                    return Err(syntax("edge ids start at 1"));
                }
                if !seen.insert(e) {
                    return Err(Error::DuplicateEdge(e));
                }
                edges.push((e, VertexId(num(fields[2])?), VertexId(num(fields[3])?), line_no));
            }
            other => return Err(syntax(&format!("unknown record {other:?}"))),
        }
    }

    let n = n.ok_or(Error::Syntax {
        line: text.lines().count().max(1),
        msg: "missing `v <n>` declaration".into(),
    })?;
    let m = edges.len();
    for &(e, a, b, _) in &edges {
        for v in [a, b] {
            if v.0 == 0 || v.0 > n {
                return Err(Error::DanglingVertex { edge: e, vertex: v });
            }
        }
        if e.0 as usize > m {
            return Err(Error::EdgeIdRange { m, found: e });
        }
    }
    Graph::new((1..=n).map(VertexId), edges.into_iter().map(|(e, a, b, _)| (e, a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn theta_from_text() {
        let g = parse_graph("v 2\ne 1 1 2\ne 2 1 2\ne 3 1 2\n").unwrap();
        assert_eq!(g, named::theta());
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn loop_and_comments() {
        let g = parse_graph("# one loop\nv 1\ne 1 1 1  # loop\n").unwrap();
        assert_eq!(g.degree(VertexId(1)), 2);
        assert!(!g.validate_13().is_ok());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_graph("v 2\ne 1 1"), Err(Error::Syntax { line: 2, .. })));
        assert_eq!(parse_graph("v 2\ne 1 1 2\ne 1 2 1"), Err(Error::DuplicateEdge(EdgeId(1))));
        assert_eq!(
            parse_graph("v 2\ne 1 1 3"),
            Err(Error::DanglingVertex {
                edge: EdgeId(1),
                vertex: VertexId(3)
            })
        );
        assert!(matches!(parse_graph("v 2\ne 2 1 2"), Err(Error::EdgeIdRange { .. })));
        assert!(matches!(parse_graph("e 1 1 2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_graph("x 1"), Err(Error::Syntax { line: 1, .. })));
    }

    #[test]
    fn text_round_trip() {
        let g = named::k4();
        assert_eq!(parse_graph(&g.to_text()).unwrap(), g);
    }
}
