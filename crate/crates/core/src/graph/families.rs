use super::{Graph, GraphError, VertexId};

fn check(
    family: &'static str,
    size: usize,
    min: usize,
    requirement: &'static str,
) -> Result<(), GraphError> {
    if size < min {
        return Err(GraphError::InvalidSize {
            family,
            size,
            requirement,
        });
    }
    Ok(())
}

/// Star with center 0 and leaves `1..=m`.
pub fn star(m: usize) -> Result<Graph, GraphError> {
    check("star", m, 1, "m >= 1")?;
    let edges: Vec<(VertexId, VertexId)> = (1..=m).map(|leaf| (0, leaf)).collect();
    Graph::from_edges(m + 1, &edges)
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    check("complete", n, 2, "n >= 2")?;
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edges(n, &edges)
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    check("cycle", n, 3, "n >= 3")?;
    let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

pub fn path(n: usize) -> Result<Graph, GraphError> {
    check("path", n, 2, "n >= 2")?;
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges)
}
