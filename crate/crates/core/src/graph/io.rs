//! Plain-text edge lists: one `u v` pair per line, whitespace separated,
//! `#` starts a comment, blank lines are skipped.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::{Graph, GraphError, VertexId};

#[derive(Debug, Error)]
pub enum EdgeListError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: GraphError,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A parsed graph together with the file's vertex labels; vertex `i` of
/// `graph` carries `labels[i]`, and labels are strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<u64>,
}

impl LabeledGraph {
    pub fn id_of(&self, label: u64) -> Option<VertexId> {
        self.labels.binary_search(&label).ok()
    }

    pub fn label(&self, v: VertexId) -> u64 {
        self.labels[v]
    }
}

pub fn parse_edge_list(text: &str) -> Result<Vec<(u64, u64)>, EdgeListError> {
    Ok(parse_lines(text)?.into_iter().map(|(_, p)| p).collect())
}

/// `(line number, pair)` for every edge line.
type NumberedPairs = Vec<(usize, (u64, u64))>;

fn parse_lines(text: &str) -> Result<NumberedPairs, EdgeListError> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(EdgeListError::Parse {
                line,
                message: format!("expected two vertex ids, found {} fields", fields.len()),
            });
        }
        let id = |s: &str| {
            s.parse::<u64>().map_err(|_| EdgeListError::Parse {
                line,
                message: format!("invalid vertex id {s:?}"),
            })
        };
        pairs.push((line, (id(fields[0])?, id(fields[1])?)));
    }
    Ok(pairs)
}

/// Line of the pair responsible for a loop or duplicate edge.
fn offending_line(pairs: &[(usize, (u64, u64))], err: &GraphError) -> Option<usize> {
    match *err {
        GraphError::LoopEdge { vertex } => pairs
            .iter()
            .find(|(_, p)| *p == (vertex, vertex))
            .map(|(l, _)| *l),
        GraphError::DuplicateEdge { u, v } => pairs
            .iter()
            .filter(|(_, p)| *p == (u, v) || *p == (v, u))
            .nth(1)
            .map(|(l, _)| *l),
        _ => None,
    }
}

pub fn parse_labeled_graph(text: &str) -> Result<LabeledGraph, EdgeListError> {
    let lines = parse_lines(text)?;
    let pairs: Vec<(u64, u64)> = lines.iter().map(|&(_, p)| p).collect();
    let graph =
        Graph::from_edge_list(&pairs).map_err(|source| match offending_line(&lines, &source) {
            Some(line) => EdgeListError::AtLine { line, source },
            None => EdgeListError::Graph(source),
        })?;
    let mut labels: Vec<u64> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();
    Ok(LabeledGraph { graph, labels })
}

pub fn parse_graph(text: &str) -> Result<Graph, EdgeListError> {
    parse_labeled_graph(text).map(|l| l.graph)
}

pub fn read_labeled_graph(path: impl AsRef<Path>) -> Result<LabeledGraph, EdgeListError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| EdgeListError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_labeled_graph(&text)
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph, EdgeListError> {
    read_labeled_graph(path).map(|l| l.graph)
}

/// Serializes `g` in lexicographic edge order, with an optional comment header.
pub fn format_edge_list(g: &Graph, header: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        for line in h.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(
        out,
        "# vertices {} edges {}",
        g.vertex_count(),
        g.edge_count()
    );
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;

    #[test]
    fn comments_and_blank_lines() {
        let text = "# a triangle\n0 1\n\n1 2   # trailing\n  2\t0\n";
        let g = parse_graph(text).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (3, 3));
    }

    #[test]
    fn parse_errors_name_the_line() {
        match parse_edge_list("0 1\n1 x\n") {
            Err(EdgeListError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match parse_edge_list("0 1\n\n1 2 3\n") {
            Err(EdgeListError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn graph_errors_name_the_line() {
        match parse_graph("0 1\n1 2\n# note\n2 1\n") {
            Err(EdgeListError::AtLine { line, source }) => {
                assert_eq!(line, 4);
                assert_eq!(source, GraphError::DuplicateEdge { u: 1, v: 2 });
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_graph("0 1\n3 3\n") {
            Err(EdgeListError::AtLine { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_graph("0 1\n2 3\n"),
            Err(EdgeListError::Graph(GraphError::Disconnected { .. }))
        ));
    }

    #[test]
    fn labels_survive_relabeling() {
        let l = parse_labeled_graph("10 30\n30 20\n").unwrap();
        assert_eq!(l.labels, vec![10, 20, 30]);
        assert_eq!(l.id_of(30), Some(2));
        assert_eq!(l.id_of(11), None);
        assert!(l.graph.has_edge(0, 2) && l.graph.has_edge(1, 2));
        assert_eq!(l.label(1), 20);
    }

    #[test]
    fn format_then_parse() {
        let g = cycle(7).unwrap();
        let text = format_edge_list(&g, Some("cycle 7"));
        assert!(text.starts_with("# cycle 7\n"));
        assert_eq!(parse_graph(&text).unwrap(), g);
    }
}
