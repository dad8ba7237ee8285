use std::fmt::Write as _;

use clap::Args;
use serde::Serialize;
use trapping::bounds::scalefree_scaling_exponent;
use trapping::exact::{att, lower_bound, trapping_times_exact, TrapSpec};
use trapping::graph::preferential_attachment;
use trapping::Graph;

use crate::bounds::fmt;
use crate::error::{CliError, Result};

/// Slopes below `1 − SUBLINEAR_MARGIN` count as sublinear.
pub const SUBLINEAR_MARGIN: f64 = 0.05;

#[derive(Debug, Args)]
pub struct ScalingArgs {
    #[arg(long, value_delimiter = ',', default_value = "500,1000,2000,4000")]
    pub sizes: Vec<usize>,
    /// Edges added per new vertex.
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Estimate the degree exponent of the largest graph and report the
    /// predicted growth exponent.
    #[arg(long)]
    pub gamma_check: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub vertices: usize,
    pub edges: usize,
    pub hub: usize,
    pub hub_degree: usize,
    pub att_exact: f64,
    pub lower_bound: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GammaCheck {
    pub gamma_estimate: f64,
    /// `None` when the estimate falls outside `(2, 3)`.
    pub predicted_exponent: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScalingReport {
    pub m: usize,
    pub seed: u64,
    pub rows: Vec<Row>,
    pub slope_att: f64,
    pub slope_lower_bound: f64,
    pub sublinear: bool,
    pub gamma_check: Option<GammaCheck>,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

/// Discrete power-law exponent by the continuous approximation to the
/// maximum-likelihood estimator, `1 + N / Σ ln(k / (k_min − ½))`.
pub fn degree_exponent_mle(g: &Graph, k_min: usize) -> f64 {
    let shift = k_min as f64 - 0.5;
    let tail: Vec<f64> = g
        .degrees()
        .into_iter()
        .filter(|&k| k >= k_min)
        .map(|k| (k as f64 / shift).ln())
        .collect();
    1.0 + tail.len() as f64 / tail.iter().sum::<f64>()
}

pub fn compute(args: &ScalingArgs) -> Result<ScalingReport> {
    if args.sizes.len() < 3 {
        return Err(CliError::InsufficientSizes(args.sizes.len()));
    }
    let mut sizes = args.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.len() < 3 {
        return Err(CliError::InsufficientSizes(sizes.len()));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    let mut largest = None;
    for &n in &sizes {
        let g = preferential_attachment(n, args.m, args.seed)?;
        let trap = TrapSpec::max_degree(&g)?;
        let tt = trapping_times_exact(&g, &trap)?;
        rows.push(Row {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            hub: trap.theta,
            hub_degree: trap.d_theta,
            att_exact: att(&tt),
            lower_bound: lower_bound(&g, &trap),
        });
        largest = Some(g);
    }
    let slope = |f: fn(&Row) -> f64| {
        log_log_slope(
            &rows
                .iter()
                .map(|r| (r.vertices as f64, f(r)))
                .collect::<Vec<_>>(),
        )
    };
    let slope_att = slope(|r| r.att_exact);
    let slope_lower_bound = slope(|r| r.lower_bound);
    let gamma_check = args.gamma_check.then(|| {
        let gamma_estimate =
            degree_exponent_mle(largest.as_ref().expect("at least 3 sizes"), args.m);
        GammaCheck {
            gamma_estimate,
            predicted_exponent: scalefree_scaling_exponent(gamma_estimate).ok(),
        }
    });
    Ok(ScalingReport {
        m: args.m,
        seed: args.seed,
        rows,
        slope_att,
        slope_lower_bound,
        sublinear: slope_att < 1.0 - SUBLINEAR_MARGIN,
        gamma_check,
    })
}

pub fn run(args: &ScalingArgs) -> Result<String> {
    let r = compute(args)?;
    if args.json {
        return Ok(serde_json::to_string_pretty(&r).expect("report serializes") + "\n");
    }
    let mut out = String::new();
    let _ = writeln!(out, "preferential attachment, m = {}, seed {}", r.m, r.seed);
    let _ = writeln!(
        out,
        "{:>9} {:>9} {:>7} {:>10} {:>14} {:>14}",
        "vertices", "edges", "hub", "hub_degree", "att_exact", "lower_bound"
    );
    for row in &r.rows {
        let _ = writeln!(
            out,
            "{:>9} {:>9} {:>7} {:>10} {:>14} {:>14}",
            row.vertices,
            row.edges,
            row.hub,
            row.hub_degree,
            fmt(row.att_exact),
            fmt(row.lower_bound)
        );
    }
    let _ = writeln!(out, "log-log slope, att_exact   {:.4}", r.slope_att);
    let _ = writeln!(out, "log-log slope, lower_bound {:.4}", r.slope_lower_bound);
    if let Some(gc) = &r.gamma_check {
        match gc.predicted_exponent {
            Some(p) => {
                let _ = writeln!(
                    out,
                    "degree exponent estimate {:.3}; predicted exponent (gamma-2)/(gamma-1) = {:.4}",
                    gc.gamma_estimate, p
                );
            }
            None => {
                let _ = writeln!(
                    out,
                    "degree exponent estimate {:.3} is outside (2, 3); no predicted exponent",
                    gc.gamma_estimate
                );
            }
        }
    }
    let _ = writeln!(
        out,
        "verdict {}",
        if r.sublinear {
            "SUBLINEAR"
        } else {
            "NOT SUBLINEAR"
        }
    );
    Ok(out)
}
