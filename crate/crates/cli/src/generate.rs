use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use trapping::graph::io::format_edge_list;
use trapping::graph::{
    complete, cycle, path, preferential_attachment, star, subdivide, SubdivisionScope,
};
use trapping::{Graph, StarTypeSpec};

use crate::error::{CliError, Result};
use crate::sidecar::{self, Scope, Sidecar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Star,
    Complete,
    Cycle,
    Path,
    Startype,
    Ba,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    pub family: Family,
    /// Family parameters: `star M`, `complete N`, `cycle N`, `path N`, `ba N M`.
    pub params: Vec<usize>,
    /// Star-type components, e.g. `k3,c4,p2,s3,iso`.
    #[arg(long, value_delimiter = ',')]
    pub components: Vec<String>,
    /// Subdivision order.
    #[arg(long, default_value_t = 0)]
    pub subdivide: usize,
    /// Subdivide only component edges (star-type graphs).
    #[arg(long)]
    pub component_scope: bool,
    /// Output file; the edge list goes to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub force: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// One star-type component token: `k<n>`, `c<n>`, `p<n>`, `s<m>` or `iso`.
pub fn parse_component(token: &str) -> Result<Graph> {
    let token = token.trim();
    if token == "iso" {
        return Ok(Graph::singleton());
    }
    let bad = || {
        CliError::Invalid(format!(
            "unknown component {token:?}; use k<n>, c<n>, p<n>, s<m> or iso"
        ))
    };
    let (kind, size) = token.split_at(token.char_indices().nth(1).map_or(token.len(), |(i, _)| i));
    let size: usize = size.parse().map_err(|_| bad())?;
    let g = match (kind, size) {
        ("k" | "p", 1) => Graph::singleton(),
        ("k", n) => complete(n)?,
        ("c", n) => cycle(n)?,
        ("p", n) => path(n)?,
        ("s", m) => star(m)?,
        _ => return Err(bad()),
    };
    Ok(g)
}

fn params<const N: usize>(family: &str, given: &[usize]) -> Result<[usize; N]> {
    given.try_into().map_err(|_| {
        CliError::Invalid(format!(
            "{family} takes {N} parameter(s), got {}",
            given.len()
        ))
    })
}

pub struct Generated {
    pub graph: Graph,
    pub sidecar: Option<Sidecar>,
    pub description: String,
}

pub fn build(args: &GenerateArgs) -> Result<Generated> {
    if args.component_scope && args.family != Family::Startype {
        return Err(CliError::Invalid(
            "--component-scope applies to startype graphs only".into(),
        ));
    }
    if !args.components.is_empty() && args.family != Family::Startype {
        return Err(CliError::Invalid(
            "--components applies to startype graphs only".into(),
        ));
    }
    let n = args.subdivide;
    let (base, description) = match args.family {
        Family::Star => {
            let [m] = params("star", &args.params)?;
            (star(m)?, format!("star {m}"))
        }
        Family::Complete => {
            let [k] = params("complete", &args.params)?;
            (complete(k)?, format!("complete {k}"))
        }
        Family::Cycle => {
            let [k] = params("cycle", &args.params)?;
            (cycle(k)?, format!("cycle {k}"))
        }
        Family::Path => {
            let [k] = params("path", &args.params)?;
            (path(k)?, format!("path {k}"))
        }
        Family::Ba => {
            let [size, m] = params("ba", &args.params)?;
            (
                preferential_attachment(size, m, args.seed)?,
                format!("ba {size} {m} seed {}", args.seed),
            )
        }
        Family::Startype => return build_startype(args),
    };
    let graph = if n == 0 {
        base
    } else {
        subdivide(&base, n, SubdivisionScope::AllEdges)?.graph
    };
    let description = if n == 0 {
        description
    } else {
        format!("{description} subdivided {n}")
    };
    Ok(Generated {
        graph,
        sidecar: None,
        description,
    })
}

fn build_startype(args: &GenerateArgs) -> Result<Generated> {
    if !args.params.is_empty() {
        return Err(CliError::Invalid(
            "startype takes its components from --components".into(),
        ));
    }
    if args.components.is_empty() {
        return Err(CliError::Invalid(
            "startype needs --components, e.g. --components k3,iso".into(),
        ));
    }
    let graphs = args
        .components
        .iter()
        .map(|t| parse_component(t))
        .collect::<Result<Vec<_>>>()?;
    let spec = StarTypeSpec::new(graphs)?;
    let scope = if args.component_scope {
        Scope::Components
    } else {
        Scope::All
    };
    let graph = sidecar::build(&spec, args.subdivide, scope);
    let kinds: Vec<String> = args
        .components
        .iter()
        .map(|t| t.trim().to_string())
        .collect();
    let mut description = format!("startype {}", kinds.join(","));
    if args.subdivide > 0 {
        let scope = if args.component_scope {
            "component edges"
        } else {
            "all edges"
        };
        description.push_str(&format!(" subdivided {} ({scope})", args.subdivide));
    }
    Ok(Generated {
        graph,
        sidecar: Some(Sidecar::new(&spec, &kinds, args.subdivide, scope)),
        description,
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub fn run(args: &GenerateArgs) -> Result<String> {
    let generated = build(args)?;
    let edges = format_edge_list(
        &generated.graph,
        Some(&format!("trapping generate {}", generated.description)),
    );
    let Some(out) = &args.out else {
        if generated.sidecar.is_some() {
            return Err(CliError::Invalid(
                "startype graphs need --out so the sidecar can be written".into(),
            ));
        }
        return Ok(edges);
    };
    let sidecar_path = sidecar::default_path(out);
    if !args.force {
        for p in [Some(out), generated.sidecar.as_ref().map(|_| &sidecar_path)]
            .into_iter()
            .flatten()
        {
            if p.exists() {
                return Err(CliError::Exists(p.clone()));
            }
        }
    }
    write(out, &edges)?;
    let mut msg = format!(
        "wrote {}: {} vertices, {} edges\n",
        out.display(),
        generated.graph.vertex_count(),
        generated.graph.edge_count()
    );
    if let Some(sc) = &generated.sidecar {
        write(&sidecar_path, &sc.to_toml())?;
        msg.push_str(&format!("wrote {}\n", sidecar_path.display()));
    }
    Ok(msg)
}
