use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;
use serde::Serialize;
use trapping::exact::{analyze, TrapSpec, TrappingTimes};
use trapping::graph::io::{read_labeled_graph, LabeledGraph};
use trapping::montecarlo::{simulate, SimConfig, SimEstimate};
use trapping::spectral::{att_spectral, normalized_spectrum, trapping_times_spectral};
use trapping::Graph;

use crate::bounds::{self, fmt, BoundsReport};
use crate::error::{CliError, Result};
use crate::sidecar::{self, Scope};

/// Relative agreement required between the exact and spectral ATT.
const SPECTRAL_AGREEMENT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrapChoice {
    MaxDegree,
    Label(u64),
}

impl FromStr for TrapChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "max-degree" {
            return Ok(TrapChoice::MaxDegree);
        }
        s.parse()
            .map(TrapChoice::Label)
            .map_err(|_| format!("expected a vertex id or `max-degree`, got {s:?}"))
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub graph_file: PathBuf,
    /// Trap vertex id as written in the file, or `max-degree` (lowest id on ties).
    #[arg(long, default_value = "max-degree")]
    pub trap: TrapChoice,
    /// Also compute the ATT from the normalized adjacency spectrum.
    #[arg(long)]
    pub spectral: bool,
    /// Monte Carlo walks per start vertex.
    #[arg(long)]
    pub mc: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub mean_degree: f64,
}

impl GraphSummary {
    pub fn of(g: &Graph) -> Self {
        let degrees = g.degrees();
        Self {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            min_degree: degrees.iter().copied().min().unwrap_or(0),
            max_degree: degrees.iter().copied().max().unwrap_or(0),
            mean_degree: g.degree_sum() as f64 / g.vertex_count() as f64,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TrapInfo {
    /// Id as written in the edge list.
    pub theta: u64,
    pub d_theta: usize,
    pub pi_theta: f64,
    pub universal: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarlo {
    pub seed: u64,
    #[serde(flatten)]
    pub estimate: SimEstimate,
    /// `(estimate − exact) / stderr`; 0 when the standard error vanishes.
    pub z_score: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub graph_summary: GraphSummary,
    pub trap: TrapInfo,
    pub att_exact: f64,
    pub att_spectral: Option<f64>,
    pub lower_bound: f64,
    pub kemeny: f64,
    pub optimal: bool,
    pub bounds: Option<BoundsReport>,
    pub montecarlo: Option<MonteCarlo>,
    pub warnings: Vec<String>,
    pub residual: f64,
}

fn select_trap(graph: &LabeledGraph, choice: TrapChoice) -> Result<TrapSpec> {
    let theta = match choice {
        TrapChoice::MaxDegree => graph.graph.max_degree_vertex(),
        TrapChoice::Label(l) => graph.id_of(l).ok_or(CliError::UnknownVertex(l))?,
    };
    Ok(TrapSpec::new(&graph.graph, theta)?)
}

pub struct Analysis {
    pub graph: LabeledGraph,
    pub report: Report,
    pub times: TrappingTimes,
    pub spectral_times: Option<Vec<f64>>,
}

pub fn compute(args: &AnalyzeArgs) -> Result<Analysis> {
    let lg = read_labeled_graph(&args.graph_file)?;
    let g = &lg.graph;
    let trap = select_trap(&lg, args.trap)?;
    let (times, exact) = analyze(g, &trap)?;
    let mut warnings = Vec::new();

    let mut spectral_times = None;
    let att_spectral = if args.spectral {
        let spectrum = normalized_spectrum(g)?;
        let value = att_spectral(g, &trap, &spectrum)?;
        let rel = (value - exact.att).abs() / exact.att.abs().max(1.0);
        if rel > SPECTRAL_AGREEMENT {
            warnings.push(format!(
                "spectral ATT {value} differs from exact {} by {rel:e} (relative)",
                exact.att
            ));
        }
        spectral_times = Some(trapping_times_spectral(g, &trap, &spectrum)?);
        Some(value)
    } else {
        None
    };

    let montecarlo = match args.mc {
        Some(walks) => {
            let estimate = simulate(g, &trap, &SimConfig::new(args.seed, walks))?;
            let z_score = if estimate.att_stderr > 0.0 {
                (estimate.att_estimate - exact.att) / estimate.att_stderr
            } else {
                0.0
            };
            if estimate.is_biased() {
                warnings.push(format!(
                    "{} walks hit the step cap and were dropped; the estimate is biased low",
                    estimate.capped_walks
                ));
            }
            if z_score.abs() > 3.0 {
                warnings.push(format!(
                    "Monte Carlo estimate is {z_score:.2} standard errors from exact"
                ));
            }
            Some(MonteCarlo {
                seed: args.seed,
                estimate,
                z_score,
            })
        }
        None => None,
    };

    let bounds = sidecar_bounds(args, &lg, &trap, &mut warnings)?;

    let report = Report {
        graph_summary: GraphSummary::of(g),
        trap: TrapInfo {
            theta: lg.label(trap.theta),
            d_theta: trap.d_theta,
            pi_theta: trap.pi_theta,
            universal: g.is_universal(trap.theta),
        },
        att_exact: exact.att,
        att_spectral,
        lower_bound: exact.lower_bound,
        kemeny: exact.kemeny,
        optimal: exact.optimal,
        bounds,
        montecarlo,
        warnings,
        residual: exact.residual,
    };
    Ok(Analysis {
        graph: lg,
        report,
        times,
        spectral_times,
    })
}

/// Bounds from a star-type sidecar next to the graph file, when present.
fn sidecar_bounds(
    args: &AnalyzeArgs,
    lg: &LabeledGraph,
    trap: &TrapSpec,
    warnings: &mut Vec<String>,
) -> Result<Option<BoundsReport>> {
    if !sidecar::default_path(&args.graph_file).exists() {
        return Ok(None);
    }
    let (sc, spec) = bounds::load_spec(&args.graph_file, None, lg)?;
    if trap.theta != sc.trap {
        warnings.push(format!(
            "star-type bounds assume the trap on u = {}; skipped for trap {}",
            sc.trap,
            lg.label(trap.theta)
        ));
        return Ok(None);
    }
    if sc.scope == Scope::All && sc.order > 0 {
        warnings.push(
            "star-type bounds skipped: every edge was subdivided, not only component edges".into(),
        );
        return Ok(None);
    }
    let report = bounds::evaluate(&spec, sc.order, &lg.graph)?;
    warnings.extend(report.warnings.iter().cloned());
    Ok(Some(report))
}

pub fn run(args: &AnalyzeArgs) -> Result<String> {
    let analysis = compute(args)?;
    if args.json {
        return Ok(
            serde_json::to_string_pretty(&analysis.report).expect("report serializes") + "\n",
        );
    }
    if args.csv {
        return Ok(render_csv(&analysis));
    }
    Ok(render_text(&analysis.report))
}

fn render_csv(a: &Analysis) -> String {
    let lg = &a.graph;
    let r = &a.report;
    let mut out = String::from("vertex,degree,trapping_time");
    if a.spectral_times.is_some() {
        out.push_str(",trapping_time_spectral");
    }
    if r.montecarlo.is_some() {
        out.push_str(",mc_mean,mc_stderr");
    }
    out.push('\n');
    for v in (0..lg.graph.vertex_count()).filter(|&v| v != a.times.theta) {
        let _ = write!(
            out,
            "{},{},{}",
            lg.label(v),
            lg.graph.degree(v),
            a.times.tt[v]
        );
        if let Some(s) = &a.spectral_times {
            let _ = write!(out, ",{}", s[v]);
        }
        if let Some(mc) = &r.montecarlo {
            let _ = write!(
                out,
                ",{},{}",
                mc.estimate.mean_tt[v], mc.estimate.stderr_tt[v]
            );
        }
        out.push('\n');
    }
    let _ = write!(out, "ATT,,{}", r.att_exact);
    if let Some(s) = r.att_spectral {
        let _ = write!(out, ",{s}");
    }
    if let Some(mc) = &r.montecarlo {
        let _ = write!(
            out,
            ",{},{}",
            mc.estimate.att_estimate, mc.estimate.att_stderr
        );
    }
    out.push('\n');
    out
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let s = &r.graph_summary;
    let _ = writeln!(
        out,
        "graph        {} vertices, {} edges, degree min {} max {} mean {}",
        s.vertices,
        s.edges,
        s.min_degree,
        s.max_degree,
        fmt(s.mean_degree)
    );
    let _ = writeln!(
        out,
        "trap         {} (degree {}, pi {}{})",
        r.trap.theta,
        r.trap.d_theta,
        fmt(r.trap.pi_theta),
        if r.trap.universal { ", universal" } else { "" }
    );
    let _ = writeln!(out, "att          {}", fmt(r.att_exact));
    if let Some(v) = r.att_spectral {
        let _ = writeln!(out, "att spectral {}", fmt(v));
    }
    let _ = writeln!(out, "lower bound  {}", fmt(r.lower_bound));
    let _ = writeln!(out, "kemeny       {}", fmt(r.kemeny));
    let _ = writeln!(out, "optimal      {}", if r.optimal { "yes" } else { "no" });
    if let Some(mc) = &r.montecarlo {
        let _ = writeln!(
            out,
            "monte carlo  {} +- {} ({} walks/vertex, seed {}, z {:.2})",
            fmt(mc.estimate.att_estimate),
            fmt(mc.estimate.att_stderr),
            mc.estimate.walks_per_vertex,
            mc.seed,
            mc.z_score
        );
    }
    if let Some(b) = &r.bounds {
        let _ = writeln!(
            out,
            "bounds       order {}: lower {}, sandwich {}",
            b.order,
            fmt(b.bounds.lower),
            if b.passed { "PASS" } else { "FAIL" }
        );
    }
    let _ = writeln!(out, "residual     {:e}", r.residual);
    for w in &r.warnings {
        let _ = writeln!(out, "warning: {w}");
    }
    out
}
