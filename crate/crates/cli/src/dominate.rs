use std::fmt::Write as _;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use trapping::graph::io::read_labeled_graph;

use crate::error::{CliError, Result};

#[derive(Debug, Args)]
pub struct DominateArgs {
    pub graph_file: PathBuf,
    /// Vertex ids as written in the file.
    #[arg(long, value_delimiter = ',', required = true)]
    pub set: Vec<u64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Member {
    pub vertex: u64,
    pub degree: usize,
    /// A single trap here meets `2|E|/d − 1` exactly iff the vertex is universal.
    pub optimal_single_trap: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DominateReport {
    pub set: Vec<u64>,
    pub dominating: bool,
    pub members: Vec<Member>,
}

pub fn compute(args: &DominateArgs) -> Result<DominateReport> {
    let lg = read_labeled_graph(&args.graph_file)?;
    let mut set = args.set.clone();
    set.sort_unstable();
    set.dedup();
    let ids = set
        .iter()
        .map(|&l| lg.id_of(l).ok_or(CliError::UnknownVertex(l)))
        .collect::<Result<Vec<_>>>()?;
    let g = &lg.graph;
    Ok(DominateReport {
        dominating: g.is_dominating_set(&ids)?,
        members: set
            .iter()
            .zip(&ids)
            .map(|(&vertex, &v)| Member {
                vertex,
                degree: g.degree(v),
                optimal_single_trap: g.is_universal(v),
            })
            .collect(),
        set,
    })
}

pub fn run(args: &DominateArgs) -> Result<String> {
    let r = compute(args)?;
    if args.json {
        return Ok(serde_json::to_string_pretty(&r).expect("report serializes") + "\n");
    }
    let mut out = String::new();
    let ids: Vec<String> = r.set.iter().map(u64::to_string).collect();
    let _ = writeln!(out, "set {{{}}}", ids.join(", "));
    let _ = writeln!(
        out,
        "dominating  {}",
        if r.dominating { "yes" } else { "no" }
    );
    for m in &r.members {
        let _ = writeln!(
            out,
            "  vertex {} (degree {}): single trap {}",
            m.vertex,
            m.degree,
            if m.optimal_single_trap {
                "optimal (universal)"
            } else {
                "not optimal"
            }
        );
    }
    let _ = writeln!(
        out,
        "note: a single trap attains 2|E|/d - 1 only on a universal vertex, i.e. a dominating set of size one; \
         larger dominating sets are where traps should go once no universal vertex exists"
    );
    Ok(out)
}
