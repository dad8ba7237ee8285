use super::{Graph, GraphError, StarTypeSpec, VertexId};

/// Which edges an `n`-th order subdivision replaces by paths.
#[derive(Debug, Clone, Copy)]
pub enum SubdivisionScope<'a> {
    AllEdges,
    /// Only edges inside the components of a star-type graph; the spokes of
    /// the external vertex are left alone.
    ComponentEdges(&'a StarTypeSpec),
}

/// Where an inserted vertex came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InsertedVertex {
    /// Original edge `(a, b)` with `a < b`.
    pub edge: (VertexId, VertexId),
    /// Position `1..=n` counted from `a`.
    pub position: usize,
}

#[derive(Debug, Clone)]
pub struct Subdivided {
    pub graph: Graph,
    pub original_vertex_count: usize,
    /// `inserted[k]` describes vertex `original_vertex_count + k`.
    pub inserted: Vec<InsertedVertex>,
}

impl Subdivided {
    pub fn provenance(&self, v: VertexId) -> Option<InsertedVertex> {
        v.checked_sub(self.original_vertex_count)
            .and_then(|k| self.inserted.get(k).copied())
    }
}

/// Replaces every in-scope edge by a path through `n` new vertices.
///
/// Edges are processed in lexicographic order and the new vertices take ids
/// after all original vertices, so labeling is reproducible.
pub fn subdivide(
    g: &Graph,
    n: usize,
    scope: SubdivisionScope<'_>,
) -> Result<Subdivided, GraphError> {
    let in_scope: Box<dyn Fn(VertexId, VertexId) -> bool> = match scope {
        SubdivisionScope::AllEdges => Box::new(|_, _| true),
        SubdivisionScope::ComponentEdges(spec) => {
            let (composed, u) = spec.compose();
            if &composed != g {
                return Err(GraphError::SpecMismatch(format!(
                    "expected {} vertices and {} edges in star-type layout, found {} and {}",
                    composed.vertex_count(),
                    composed.edge_count(),
                    g.vertex_count(),
                    g.edge_count()
                )));
            }
            Box::new(move |a, b| a != u && b != u)
        }
    };

    let base = g.vertex_count();
    let mut edges = Vec::new();
    let mut inserted = Vec::new();
    for (a, b) in g.edges() {
        if n == 0 || !in_scope(a, b) {
            edges.push((a, b));
            continue;
        }
        let mut prev = a;
        for position in 1..=n {
            let w = base + inserted.len();
            inserted.push(InsertedVertex {
                edge: (a, b),
                position,
            });
            edges.push((prev, w));
            prev = w;
        }
        edges.push((prev, b));
    }
    let graph = Graph::from_edges(base + inserted.len(), &edges)?;
    Ok(Subdivided {
        graph,
        original_vertex_count: base,
        inserted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path, random_connected};
    use proptest::prelude::*;

    #[test]
    fn zero_order_is_identity() {
        let g = complete(5).unwrap();
        let s = subdivide(&g, 0, SubdivisionScope::AllEdges).unwrap();
        assert_eq!(s.graph, g);
        assert!(s.inserted.is_empty());
    }

    #[test]
    fn midpoint_of_single_edge() {
        let s = subdivide(&path(2).unwrap(), 1, SubdivisionScope::AllEdges).unwrap();
        assert_eq!(s.graph.to_edge_list(), vec![(0, 2), (1, 2)]);
        assert_eq!(
            s.provenance(2),
            Some(InsertedVertex {
                edge: (0, 1),
                position: 1
            })
        );
        assert_eq!(s.provenance(1), None);
    }

    #[test]
    fn component_scope_on_triangle() {
        let spec = StarTypeSpec::new(vec![complete(3).unwrap()]).unwrap();
        let (g, _) = spec.compose();
        let s = subdivide(&g, 1, SubdivisionScope::ComponentEdges(&spec)).unwrap();
        assert_eq!((s.graph.vertex_count(), s.graph.edge_count()), (7, 9));
        assert!(!s.graph.is_universal(0));
        assert_eq!(s.graph.degree(0), 3);
        let s2 = subdivide(&g, 2, SubdivisionScope::ComponentEdges(&spec)).unwrap();
        assert_eq!((s2.graph.vertex_count(), s2.graph.edge_count()), (10, 12));
    }

    #[test]
    fn positions_run_from_lower_endpoint() {
        let s = subdivide(&path(2).unwrap(), 3, SubdivisionScope::AllEdges).unwrap();
        // 0 - 2 - 3 - 4 - 1
        assert_eq!(s.graph.neighbors(0), &[2]);
        assert_eq!(s.graph.neighbors(4), &[1, 3]);
        assert_eq!(s.provenance(4).unwrap().position, 3);
    }

    #[test]
    fn component_scope_rejects_foreign_graph() {
        let spec = StarTypeSpec::new(vec![complete(3).unwrap()]).unwrap();
        assert!(matches!(
            subdivide(
                &complete(5).unwrap(),
                1,
                SubdivisionScope::ComponentEdges(&spec)
            ),
            Err(GraphError::SpecMismatch(_))
        ));
    }

    proptest! {
        #[test]
        fn all_edge_counts(vn in 2usize..200, p in 0.0f64..0.2, n in 0usize..=5, seed in any::<u64>()) {
            let g = random_connected(vn, p, seed).unwrap();
            let s = subdivide(&g, n, SubdivisionScope::AllEdges).unwrap();
            prop_assert_eq!(s.graph.vertex_count(), g.vertex_count() + n * g.edge_count());
            prop_assert_eq!(s.graph.edge_count(), (n + 1) * g.edge_count());
        }
    }
}
