//! Simple connected undirected graphs and the constructions built on them.
//!
//! A [`Graph`] is validated once at construction (no loops, no parallel
//! edges, connected) and is immutable afterwards. Vertex ids are dense and
//! 0-based; neighbor lists are kept sorted.

mod families;
mod generate;
pub mod io;
mod startype;
mod subdivide;

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

pub use families::{complete, cycle, path, star};
pub use generate::{preferential_attachment, random_connected};
pub use startype::StarTypeSpec;
pub use subdivide::{subdivide, InsertedVertex, Subdivided, SubdivisionScope};

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge list is empty")]
    EmptyEdgeList,
    #[error("self-loop at vertex {vertex}")]
    LoopEdge { vertex: u64 },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: u64, v: u64 },
    #[error("graph is disconnected: vertex {unreachable} is not reachable from vertex {root}")]
    Disconnected { root: u64, unreachable: u64 },
    #[error("invalid size for {family}: {size} ({requirement})")]
    InvalidSize {
        family: &'static str,
        size: usize,
        requirement: &'static str,
    },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("star-type specification has no components")]
    EmptySpec,
    #[error("component-scoped subdivision requires a star-type specification")]
    UnknownSpec,
    #[error("graph does not match its star-type specification: {0}")]
    SpecMismatch(String),
}

/// Immutable simple connected undirected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from arbitrary integer vertex labels.
    ///
    /// Labels are relabeled to `0..n` in increasing label order, so an edge
    /// list that already uses dense 0-based ids keeps its numbering. Errors
    /// report the original labels.
    pub fn from_edge_list(pairs: &[(u64, u64)]) -> Result<Self, GraphError> {
        if pairs.is_empty() {
            return Err(GraphError::EmptyEdgeList);
        }
        let mut labels: Vec<u64> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        labels.sort_unstable();
        labels.dedup();
        let index: BTreeMap<u64, VertexId> =
            labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let edges: Vec<(VertexId, VertexId)> =
            pairs.iter().map(|&(u, v)| (index[&u], index[&v])).collect();
        Self::build(labels.len(), &edges, &labels)
    }

    /// Builds a graph on exactly `vertex_count` vertices `0..vertex_count`.
    ///
    /// Unlike [`Graph::from_edge_list`] this accepts the single-vertex graph,
    /// which is a legal star-type component.
    pub fn from_edges(
        vertex_count: usize,
        edges: &[(VertexId, VertexId)],
    ) -> Result<Self, GraphError> {
        if vertex_count == 0 {
            return Err(GraphError::InvalidSize {
                family: "graph",
                size: 0,
                requirement: "at least one vertex",
            });
        }
        if let Some(&(u, v)) = edges
            .iter()
            .find(|&&(u, v)| u >= vertex_count || v >= vertex_count)
        {
            return Err(GraphError::UnknownVertex(u.max(v)));
        }
        let labels: Vec<u64> = (0..vertex_count as u64).collect();
        Self::build(vertex_count, edges, &labels)
    }

    /// The one-vertex graph.
    pub fn singleton() -> Self {
        Self {
            adjacency: vec![Vec::new()],
            edge_count: 0,
        }
    }

    fn build(
        vertex_count: usize,
        edges: &[(VertexId, VertexId)],
        labels: &[u64],
    ) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::LoopEdge { vertex: labels[u] });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge {
                    u: labels[a],
                    v: labels[b],
                });
            }
        }
        let graph = Self {
            adjacency,
            edge_count: edges.len(),
        };
        if let Some(unreachable) = graph.first_unreachable() {
            return Err(GraphError::Disconnected {
                root: labels[0],
                unreachable: labels[unreachable],
            });
        }
        debug_assert_eq!(graph.degree_sum(), 2 * graph.edge_count);
        Ok(graph)
    }

    fn first_unreachable(&self) -> Option<VertexId> {
        let mut seen = vec![false; self.vertex_count()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    pub fn degree_sum(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.vertex_count()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.contains(u) && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn to_edge_list(&self) -> Vec<(u64, u64)> {
        self.edges().map(|(u, v)| (u as u64, v as u64)).collect()
    }

    /// Vertex of maximum degree; ties go to the lowest id.
    pub fn max_degree_vertex(&self) -> VertexId {
        let mut best = 0;
        for v in 1..self.vertex_count() {
            if self.degree(v) > self.degree(best) {
                best = v;
            }
        }
        best
    }

    /// Vertices adjacent to every other vertex.
    pub fn universal_vertices(&self) -> Vec<VertexId> {
        let target = self.vertex_count() - 1;
        (0..self.vertex_count())
            .filter(|&v| self.degree(v) == target)
            .collect()
    }

    pub fn is_universal(&self, v: VertexId) -> bool {
        self.degree(v) + 1 == self.vertex_count()
    }

    /// True iff every vertex outside `set` has a neighbor inside it.
    pub fn is_dominating_set(&self, set: &[VertexId]) -> Result<bool, GraphError> {
        let mut covered = vec![false; self.vertex_count()];
        for &s in set {
            if !self.contains(s) {
                return Err(GraphError::UnknownVertex(s));
            }
            covered[s] = true;
            for &w in self.neighbors(s) {
                covered[w] = true;
            }
        }
        Ok(covered.into_iter().all(|c| c))
    }

    /// Two-coloring by breadth-first search.
    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.vertex_count()];
        color[0] = 0;
        let mut queue = VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adjacency[u] {
                if color[v] == u8::MAX {
                    color[v] = 1 - color[u];
                    queue.push_back(v);
                } else if color[v] == color[u] {
                    return false;
                }
            }
        }
        true
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        self.adjacency.iter().all(|l| l.len() == d).then_some(d)
    }
}
