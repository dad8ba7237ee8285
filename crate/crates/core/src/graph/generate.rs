use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError, VertexId};

/// Preferential-attachment graph on `n` vertices.
///
/// Starts from a clique on `m_attach + 1` vertices; every later vertex links
/// to `m_attach` distinct existing vertices chosen with probability
/// proportional to their current degree. The edge count is always
/// `m(m+1)/2 + m(n - m - 1)`.
pub fn preferential_attachment(n: usize, m_attach: usize, seed: u64) -> Result<Graph, GraphError> {
    if m_attach == 0 {
        return Err(GraphError::InvalidSize {
            family: "preferential attachment",
            size: m_attach,
            requirement: "m_attach >= 1",
        });
    }
    if n <= m_attach {
        return Err(GraphError::InvalidSize {
            family: "preferential attachment",
            size: n,
            requirement: "n > m_attach",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core = m_attach + 1;
    let mut edges: Vec<(VertexId, VertexId)> =
        Vec::with_capacity(core * m_attach / 2 + m_attach * (n - core));
    // Every edge endpoint, so a uniform pick is degree-proportional.
    let mut endpoints: Vec<VertexId> = Vec::with_capacity(2 * edges.capacity());
    for u in 0..core {
        for v in u + 1..core {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut chosen = Vec::with_capacity(m_attach);
    for v in core..n {
        chosen.clear();
        while chosen.len() < m_attach {
            let t = endpoints[rng.random_range(0..endpoints.len())];
            if !chosen.contains(&t) {
                chosen.push(t);
            }
        }
        for &t in &chosen {
            edges.push((t, v));
            endpoints.extend([t, v]);
        }
    }
    Graph::from_edges(n, &edges)
}

/// Random connected graph: a uniformly attached random spanning tree plus
/// every remaining pair independently with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidSize {
            family: "random connected",
            size: n,
            requirement: "n >= 1",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<VertexId> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut present = vec![false; n * n];
    let mut edges = Vec::new();
    for i in 1..n {
        let (a, b) = (order[i], order[rng.random_range(0..i)]);
        let (a, b) = (a.min(b), a.max(b));
        present[a * n + b] = true;
        edges.push((a, b));
    }
    let p = p.clamp(0.0, 1.0);
    for a in 0..n {
        for b in a + 1..n {
            if !present[a * n + b] && rng.random_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges)
}
