use std::ops::Range;

use super::{Graph, GraphError, VertexId};

/// Disjoint connected components joined through one external vertex `u`.
///
/// The composed graph places `u` at id 0 and the components consecutively
/// after it, in the order given.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarTypeSpec {
    components: Vec<Graph>,
}

impl StarTypeSpec {
    pub fn new(components: Vec<Graph>) -> Result<Self, GraphError> {
        if components.is_empty() {
            return Err(GraphError::EmptySpec);
        }
        Ok(Self { components })
    }

    /// `m` isolated vertices; composes to the star `S_m`.
    pub fn isolated(m: usize) -> Result<Self, GraphError> {
        Self::new(vec![Graph::singleton(); m])
    }

    pub fn components(&self) -> &[Graph] {
        &self.components
    }

    /// `Σ|V_i|`, which is also the degree of `u`.
    pub fn component_vertices(&self) -> usize {
        self.components.iter().map(Graph::vertex_count).sum()
    }

    /// `Σ|E_i|`.
    pub fn component_edges(&self) -> usize {
        self.components.iter().map(Graph::edge_count).sum()
    }

    pub fn composed_vertex_count(&self) -> usize {
        1 + self.component_vertices()
    }

    pub fn composed_edge_count(&self) -> usize {
        self.component_vertices() + self.component_edges()
    }

    /// Id ranges of each component inside the composed graph.
    pub fn component_ranges(&self) -> Vec<Range<VertexId>> {
        let mut start = 1;
        self.components
            .iter()
            .map(|c| {
                let r = start..start + c.vertex_count();
                start = r.end;
                r
            })
            .collect()
    }

    /// Common degree when every component is `d`-regular with the same `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.components[0].regular_degree()?;
        self.components
            .iter()
            .all(|c| c.regular_degree() == Some(d))
            .then_some(d)
    }

    /// Composed graph and the id of the external vertex `u` (always 0).
    pub fn compose(&self) -> (Graph, VertexId) {
        let mut edges = Vec::with_capacity(self.composed_edge_count());
        for (component, range) in self.components.iter().zip(self.component_ranges()) {
            edges.extend(range.clone().map(|v| (0, v)));
            edges.extend(
                component
                    .edges()
                    .map(|(a, b)| (range.start + a, range.start + b)),
            );
        }
        let graph = Graph::from_edges(self.composed_vertex_count(), &edges)
            .expect("star-type composition is simple and connected");
        debug_assert!(graph.is_universal(0));
        (graph, 0)
    }
}
