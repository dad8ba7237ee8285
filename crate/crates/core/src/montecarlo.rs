//! Seeded random-walk simulation of trapping times.
//!
//! Every walk draws from its own ChaCha8 stream: the key comes from the
//! master seed and the 64-bit stream id packs `(start_vertex, walk_index)`.
//! Results therefore do not depend on how walks are split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exact::TrapSpec;
use crate::graph::{Graph, VertexId};

pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error("every walk from vertex {vertex} hit the step cap of {max_steps}")]
    AllWalksCapped { vertex: VertexId, max_steps: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimConfig {
    pub seed: u64,
    pub walks_per_vertex: u32,
    pub max_steps: u64,
}

impl SimConfig {
    pub fn new(seed: u64, walks_per_vertex: u32) -> Self {
        Self {
            seed,
            walks_per_vertex,
            max_steps: DEFAULT_MAX_STEPS,
        }
    }

    fn validate(&self) -> Result<(), SimError> {
        if self.walks_per_vertex == 0 {
            return Err(SimError::InvalidConfig(
                "walks_per_vertex must be at least 1".into(),
            ));
        }
        if self.max_steps == 0 {
            return Err(SimError::InvalidConfig(
                "max_steps must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimEstimate {
    /// Sample mean of completed walks per start vertex; 0 at the trap.
    pub mean_tt: Vec<f64>,
    pub stderr_tt: Vec<f64>,
    pub att_estimate: f64,
    pub att_stderr: f64,
    /// Walks stopped at `max_steps`; they are excluded from the means.
    pub capped_walks: u64,
    pub walks_per_vertex: u32,
}

impl SimEstimate {
    /// Capped walks were dropped, so the means are biased low.
    pub fn is_biased(&self) -> bool {
        self.capped_walks > 0
    }
}

#[derive(Debug, Clone, Copy, Default)]
struct VertexStats {
    count: u64,
    mean: f64,
    m2: f64,
    capped: u64,
}

impl VertexStats {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn stderr(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        (self.m2 / (self.count - 1) as f64 / self.count as f64).sqrt()
    }
}

fn walk(
    g: &Graph,
    theta: VertexId,
    start: VertexId,
    max_steps: u64,
    rng: &mut ChaCha8Rng,
) -> Option<u64> {
    let mut at = start;
    for step in 1..=max_steps {
        let nbrs = g.neighbors(at);
        at = nbrs[rng.random_range(0..nbrs.len())];
        if at == theta {
            return Some(step);
        }
    }
    None
}

fn simulate_vertex(
    g: &Graph,
    theta: VertexId,
    start: VertexId,
    cfg: &SimConfig,
    base: &ChaCha8Rng,
) -> VertexStats {
    let mut stats = VertexStats::default();
    for k in 0..cfg.walks_per_vertex {
        let mut rng = base.clone();
        rng.set_stream(((start as u64) << 32) | u64::from(k));
        rng.set_word_pos(0);
        match walk(g, theta, start, cfg.max_steps, &mut rng) {
            Some(steps) => stats.push(steps as f64),
            None => stats.capped += 1,
        }
    }
    stats
}

pub fn simulate(g: &Graph, trap: &TrapSpec, cfg: &SimConfig) -> Result<SimEstimate, SimError> {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    simulate_with_threads(g, trap, cfg, threads)
}

/// [`simulate`] with an explicit worker count; the output is identical for
/// any `threads >= 1`.
pub fn simulate_with_threads(
    g: &Graph,
    trap: &TrapSpec,
    cfg: &SimConfig,
    threads: usize,
) -> Result<SimEstimate, SimError> {
    cfg.validate()?;
    let n = g.vertex_count();
    if n > u32::MAX as usize {
        return Err(SimError::InvalidConfig(
            "vertex ids must fit in 32 bits".into(),
        ));
    }
    let theta = trap.theta;
    let base = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut stats = vec![VertexStats::default(); n];
    let chunk = n.div_ceil(threads.max(1));
    std::thread::scope(|scope| {
        for (c, slot) in stats.chunks_mut(chunk).enumerate() {
            let base = &base;
            scope.spawn(move || {
                for (offset, s) in slot.iter_mut().enumerate() {
                    let v = c * chunk + offset;
                    if v != theta {
                        *s = simulate_vertex(g, theta, v, cfg, base);
                    }
                }
            });
        }
    });

    if let Some(vertex) = (0..n).find(|&v| v != theta && stats[v].count == 0) {
        return Err(SimError::AllWalksCapped {
            vertex,
            max_steps: cfg.max_steps,
        });
    }
    let mean_tt: Vec<f64> = stats.iter().map(|s| s.mean).collect();
    let stderr_tt: Vec<f64> = stats.iter().map(VertexStats::stderr).collect();
    let others = (n - 1) as f64;
    let att_estimate = mean_tt.iter().sum::<f64>() / others;
    let att_stderr = stderr_tt.iter().map(|s| s * s).sum::<f64>().sqrt() / others;
    Ok(SimEstimate {
        mean_tt,
        stderr_tt,
        att_estimate,
        att_stderr,
        capped_walks: stats.iter().map(|s| s.capped).sum(),
        walks_per_vertex: cfg.walks_per_vertex,
    })
}
