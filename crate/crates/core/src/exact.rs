//! Trapping times from the absorbing-chain linear system.
//!
//! With the trap's row and column removed from `P = D⁻¹A`, the expected
//! absorption times solve `(I − Q) t = 1`. This is the fixed point of the
//! first-passage generating function differentiated at `z = 1`, so it is the
//! same system the master equations lead to.

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::linalg::{DenseMatrix, LinalgError};

/// Relative tolerance used by [`is_optimal`] when callers have no preference.
pub const DEFAULT_OPTIMALITY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("trap vertex {0} is not in the graph")]
    UnknownVertex(VertexId),
    #[error("graph has a single vertex; there is nothing to trap")]
    TrivialGraph,
    #[error("absorbing system is singular at column {0}")]
    SingularSystem(usize),
    #[error("solution residual {residual:e} exceeds {limit:e}")]
    NumericalFailure { residual: f64, limit: f64 },
}

impl From<LinalgError> for SolveError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::Singular(k) => SolveError::SingularSystem(k),
            LinalgError::Dimension(_) => SolveError::NumericalFailure {
                residual: f64::NAN,
                limit: 0.0,
            },
        }
    }
}

/// Trap vertex θ with its degree and stationary mass `d_θ / 2|E|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapSpec {
    pub theta: VertexId,
    pub d_theta: usize,
    pub pi_theta: f64,
}

impl TrapSpec {
    pub fn new(g: &Graph, theta: VertexId) -> Result<Self, SolveError> {
        if !g.contains(theta) {
            return Err(SolveError::UnknownVertex(theta));
        }
        if g.vertex_count() < 2 {
            return Err(SolveError::TrivialGraph);
        }
        let d_theta = g.degree(theta);
        Ok(Self {
            theta,
            d_theta,
            pi_theta: d_theta as f64 / g.degree_sum() as f64,
        })
    }

    /// Trap on the highest-degree vertex, lowest id on ties.
    pub fn max_degree(g: &Graph) -> Result<Self, SolveError> {
        Self::new(g, g.max_degree_vertex())
    }
}

/// Expected steps to absorption from every vertex; the trap entry is 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrappingTimes {
    pub theta: VertexId,
    pub tt: Vec<f64>,
    /// `‖(I − Q)t − 1‖∞` of the solved system.
    pub residual: f64,
}

impl TrappingTimes {
    pub fn get(&self, v: VertexId) -> f64 {
        self.tt[v]
    }

    pub fn att(&self) -> f64 {
        att(self)
    }

    /// Largest violation of `TT_i = 1 + (1/d_i) Σ_{j ∈ N(i), j ≠ θ} TT_j`.
    pub fn recurrence_residual(&self, g: &Graph) -> f64 {
        (0..g.vertex_count())
            .filter(|&i| i != self.theta)
            .map(|i| {
                let s: f64 = g
                    .neighbors(i)
                    .iter()
                    .filter(|&&j| j != self.theta)
                    .map(|&j| self.tt[j])
                    .sum();
                (self.tt[i] - 1.0 - s / g.degree(i) as f64).abs()
            })
            .fold(0.0, f64::max)
    }
}

pub fn trapping_times_exact(g: &Graph, trap: &TrapSpec) -> Result<TrappingTimes, SolveError> {
    let n = g.vertex_count();
    let theta = trap.theta;
    if !g.contains(theta) {
        return Err(SolveError::UnknownVertex(theta));
    }
    if n < 2 {
        return Err(SolveError::TrivialGraph);
    }
    // Non-trap vertex v sits at row v or v - 1.
    let row = |v: VertexId| if v < theta { v } else { v - 1 };
    let mut system = DenseMatrix::identity(n - 1);
    for v in (0..n).filter(|&v| v != theta) {
        let p = 1.0 / g.degree(v) as f64;
        for &w in g.neighbors(v).iter().filter(|&&w| w != theta) {
            system[(row(v), row(w))] -= p;
        }
    }
    let ones = vec![1.0; n - 1];
    let solution = system.clone().lu()?.solve(&ones)?;
    let residual = system
        .mul_vec(&solution)
        .iter()
        .map(|r| (r - 1.0).abs())
        .fold(0.0, f64::max);
    let limit = 1e-9 * n as f64;
    if !residual.is_finite() || residual > limit {
        return Err(SolveError::NumericalFailure { residual, limit });
    }
    let mut tt = vec![0.0; n];
    for v in (0..n).filter(|&v| v != theta) {
        tt[v] = solution[row(v)];
    }
    Ok(TrappingTimes {
        theta,
        tt,
        residual,
    })
}

/// Uniform mean of `TT_{i→θ}` over the `|V| − 1` non-trap vertices.
pub fn att(tt: &TrappingTimes) -> f64 {
    let sum: f64 = tt.tt.iter().sum();
    sum / (tt.tt.len() - 1) as f64
}

/// `Σ_v π_v TT_{v→θ}` with `π_v = d_v / 2|E|`.
pub fn kemeny(g: &Graph, _trap: &TrapSpec, tt: &TrappingTimes) -> f64 {
    let total = g.degree_sum() as f64;
    (0..g.vertex_count())
        .map(|v| g.degree(v) as f64 / total * tt.tt[v])
        .sum()
}

/// `2|E| / d_θ − 1`.
pub fn lower_bound(g: &Graph, trap: &TrapSpec) -> f64 {
    g.degree_sum() as f64 / trap.d_theta as f64 - 1.0
}

/// Whether the exact ATT meets the lower bound within `tol` (relative).
pub fn is_optimal(g: &Graph, trap: &TrapSpec, tol: f64) -> Result<bool, SolveError> {
    let tt = trapping_times_exact(g, trap)?;
    Ok(meets_bound(att(&tt), lower_bound(g, trap), tol))
}

fn meets_bound(att: f64, bound: f64, tol: f64) -> bool {
    (att - bound).abs() <= tol * bound.max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Spectral,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrappingReport {
    pub att: f64,
    pub kemeny: f64,
    pub lower_bound: f64,
    pub optimal: bool,
    pub method: Method,
    pub residual: f64,
}

pub fn analyze(g: &Graph, trap: &TrapSpec) -> Result<(TrappingTimes, TrappingReport), SolveError> {
    let tt = trapping_times_exact(g, trap)?;
    let att = att(&tt);
    let bound = lower_bound(g, trap);
    let report = TrappingReport {
        att,
        kemeny: kemeny(g, trap, &tt),
        lower_bound: bound,
        optimal: meets_bound(att, bound, DEFAULT_OPTIMALITY_TOL),
        method: Method::Exact,
        residual: tt.residual,
    };
    Ok((tt, report))
}

/// Trapping times in exact rational arithmetic by Gauss-Jordan elimination
/// on `D_θ t = D_θ 1 + A_θ t` (integer coefficients). Meant for small graphs.
pub fn trapping_times_rational(g: &Graph, trap: &TrapSpec) -> Result<Vec<BigRational>, SolveError> {
    let n = g.vertex_count();
    let theta = trap.theta;
    if !g.contains(theta) {
        return Err(SolveError::UnknownVertex(theta));
    }
    let idx: Vec<VertexId> = (0..n).filter(|&v| v != theta).collect();
    let m = idx.len();
    let pos = |v: VertexId| if v < theta { v } else { v - 1 };
    let int = |x: usize| BigRational::from_integer(BigInt::from(x));
    // augmented rows [D_θ − A_θ | d]
    let mut rows: Vec<Vec<BigRational>> = idx
        .iter()
        .map(|&v| {
            let mut r = vec![BigRational::zero(); m + 1];
            r[pos(v)] = int(g.degree(v));
            for &w in g.neighbors(v).iter().filter(|&&w| w != theta) {
                r[pos(w)] -= BigRational::one();
            }
            r[m] = int(g.degree(v));
            r
        })
        .collect();
    for k in 0..m {
        let p = (k..m)
            .find(|&i| !rows[i][k].is_zero())
            .ok_or(SolveError::SingularSystem(k))?;
        rows.swap(k, p);
        let inv = rows[k][k].recip();
        for x in rows[k].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[k].clone();
        for (i, r) in rows.iter_mut().enumerate() {
            if i == k || r[k].is_zero() {
                continue;
            }
            let f = r[k].clone();
            for (x, y) in r.iter_mut().zip(&pivot) {
                *x -= &f * y;
            }
        }
    }
    let mut out = vec![BigRational::zero(); n];
    for (k, &v) in idx.iter().enumerate() {
        out[v] = rows[k][m].clone();
    }
    Ok(out)
}

/// Exact rational ATT.
pub fn att_rational(g: &Graph, trap: &TrapSpec) -> Result<BigRational, SolveError> {
    let tt = trapping_times_rational(g, trap)?;
    let sum: BigRational = tt.iter().sum();
    Ok(sum / BigRational::from_integer(BigInt::from(g.vertex_count() - 1)))
}
