//! TOML description of a generated star-type graph, written next to the edge
//! list as `<file>.startype.toml`.
//!
//! Component vertex ranges and edges use the ids of the composed graph before
//! any subdivision, where `u` is vertex 0.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use trapping::graph::{subdivide, SubdivisionScope};
use trapping::{Graph, StarTypeSpec, VertexId};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    /// Only component edges were subdivided.
    Components,
    /// Every edge, spokes of `u` included, was subdivided.
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    /// Half-open id range `[start, end)`.
    pub vertices: [VertexId; 2],
    pub edges: Vec<[VertexId; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub trap: VertexId,
    pub order: usize,
    pub scope: Scope,
    pub d_theta: usize,
    pub sum_edges: usize,
    pub components: Vec<Component>,
}

pub fn default_path(graph_file: &Path) -> PathBuf {
    let mut name = graph_file.as_os_str().to_owned();
    name.push(".startype.toml");
    PathBuf::from(name)
}

impl Sidecar {
    pub fn new(spec: &StarTypeSpec, kinds: &[String], order: usize, scope: Scope) -> Self {
        let components = spec
            .components()
            .iter()
            .zip(spec.component_ranges())
            .enumerate()
            .map(|(i, (c, r))| Component {
                kind: kinds.get(i).cloned(),
                vertices: [r.start, r.end],
                edges: c.edges().map(|(a, b)| [a + r.start, b + r.start]).collect(),
            })
            .collect();
        Self {
            trap: 0,
            order,
            scope,
            d_theta: spec.component_vertices(),
            sum_edges: spec.component_edges(),
            components,
        }
    }

    pub fn to_toml(&self) -> String {
        let body = toml::to_string(self).expect("sidecar serializes");
        format!(
            "# star-type specification; ids refer to the composed graph before subdivision\n{body}"
        )
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {
                return Err(CliError::MissingSidecar(path.to_path_buf()))
            }
            Err(e) => return Err(invalid(path, e.to_string())),
        };
        toml::from_str(&text).map_err(|e| invalid(path, e.to_string()))
    }

    /// Rebuilds the specification, checking the recorded layout and counts.
    pub fn spec(&self, path: &Path) -> Result<StarTypeSpec> {
        if self.trap != 0 {
            return Err(invalid(
                path,
                format!("trap must be u = 0, found {}", self.trap),
            ));
        }
        let mut next = 1;
        let mut graphs = Vec::with_capacity(self.components.len());
        for (i, c) in self.components.iter().enumerate() {
            let [start, end] = c.vertices;
            if start != next || end <= start {
                return Err(invalid(
                    path,
                    format!(
                        "component {i} has range [{start}, {end}); expected it to start at {next}"
                    ),
                ));
            }
            let mut local = Vec::with_capacity(c.edges.len());
            for &[a, b] in &c.edges {
                if !(start..end).contains(&a) || !(start..end).contains(&b) {
                    return Err(invalid(
                        path,
                        format!("component {i} edge ({a}, {b}) leaves its range"),
                    ));
                }
                local.push((a - start, b - start));
            }
            let g = if local.is_empty() && end - start == 1 {
                Graph::singleton()
            } else {
                Graph::from_edges(end - start, &local)
                    .map_err(|e| invalid(path, format!("component {i}: {e}")))?
            };
            graphs.push(g);
            next = end;
        }
        let spec = StarTypeSpec::new(graphs).map_err(|e| invalid(path, e.to_string()))?;
        if spec.component_vertices() != self.d_theta || spec.component_edges() != self.sum_edges {
            return Err(invalid(
                path,
                format!(
                    "recorded d_theta = {} and sum_edges = {} disagree with the components ({} and {})",
                    self.d_theta,
                    self.sum_edges,
                    spec.component_vertices(),
                    spec.component_edges()
                ),
            ));
        }
        Ok(spec)
    }
}

/// The graph described by `spec` at subdivision order `n`.
pub fn build(spec: &StarTypeSpec, n: usize, scope: Scope) -> Graph {
    let (composed, _) = spec.compose();
    if n == 0 {
        return composed;
    }
    let scope = match scope {
        Scope::Components => SubdivisionScope::ComponentEdges(spec),
        Scope::All => SubdivisionScope::AllEdges,
    };
    subdivide(&composed, n, scope)
        .expect("a composed graph matches its own specification")
        .graph
}

fn invalid(path: &Path, message: String) -> CliError {
    CliError::Sidecar {
        path: path.to_path_buf(),
        message,
    }
}
