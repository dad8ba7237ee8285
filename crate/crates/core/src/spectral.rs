//! Trapping times from the eigendecomposition of the symmetrically
//! normalized adjacency `Γ = D^{-1/2} A D^{-1/2}`.
//!
//! With eigenpairs `1 = λ₁ > λ₂ ≥ … ≥ λ_N` and orthonormal `ψ_i`, the hitting
//! time from `j` to θ is
//!
//! ```text
//! TT_{j→θ} = 2|E| Σ_{i≥2} 1/(1−λ_i) · (ψ_iθ²/d_θ − ψ_ij ψ_iθ / √(d_j d_θ))
//! ```
//!
//! Averaging with the stationary weights `π_j / (1 − π_θ)` makes the cross
//! term vanish (`ψ_i ⟂ ψ₁ = √π`), leaving
//! `(2|E|/d_θ) / (1 − π_θ) · Σ_{i≥2} ψ_iθ² / (1 − λ_i)`, which is what the
//! Cauchy–Schwarz step bounds below by `2|E|/d_θ − 1`. The uniform average
//! over start vertices keeps the cross term; [`att_spectral`] evaluates it.
//!
//! Eigenvector signs are arbitrary: every quantity here is either quadratic
//! in a single `ψ_i` or a product `ψ_ij ψ_iθ` within one eigenvector.

use nalgebra::{DMatrix, SymmetricEigen};
use thiserror::Error;

use crate::exact::TrapSpec;
use crate::graph::Graph;

const EIGEN_TOL: f64 = 1e-9;
const VECTOR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("symmetric eigensolver did not converge")]
    ConvergenceFailure,
    #[error("spectral gap 1 − λ_{index} = {gap:e} is degenerate")]
    DegenerateGap { index: usize, gap: f64 },
    #[error("spectrum failed verification: {0}")]
    Unverified(String),
}

/// Full eigendecomposition of `Γ`, eigenvalues sorted descending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Column `i` is `ψ_{i+1}`.
    pub eigenvectors: DMatrix<f64>,
    pub verified: bool,
    /// First failed check, when `verified` is false.
    pub issue: Option<String>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Component `j` of the `i`-th eigenvector (0-based `i`).
    pub fn psi(&self, i: usize, j: usize) -> f64 {
        self.eigenvectors[(j, i)]
    }

    pub fn lambda_min(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    /// Largest `|ψ_iᵀψ_j − δ_ij|`.
    pub fn orthonormality_error(&self) -> f64 {
        let gram = self.eigenvectors.transpose() * &self.eigenvectors;
        let n = self.len();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let delta = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram[(i, j)] - delta).abs());
            }
        }
        worst
    }

    /// Largest `|Σ_j ψ_ij √(d_j / 2|E|)|` over `i ≥ 2`.
    pub fn cancellation_error(&self, g: &Graph) -> f64 {
        let sqrt_pi = stationary_sqrt(g);
        (1..self.len())
            .map(|i| {
                (0..self.len())
                    .map(|j| self.psi(i, j) * sqrt_pi[j])
                    .sum::<f64>()
                    .abs()
            })
            .fold(0.0, f64::max)
    }

    fn check(&self, g: &Graph) -> Result<(), String> {
        let ev = &self.eigenvalues;
        if (ev[0] - 1.0).abs() > EIGEN_TOL {
            return Err(format!("λ₁ = {} is not 1", ev[0]));
        }
        if let Some(l) = ev
            .iter()
            .find(|&&l| !(-1.0 - EIGEN_TOL..=1.0 + EIGEN_TOL).contains(&l))
        {
            return Err(format!("eigenvalue {l} outside [−1, 1]"));
        }
        if ev.len() > 1 && ev[1] >= 1.0 - EIGEN_TOL {
            return Err(format!("λ₂ = {} is not below 1", ev[1]));
        }
        let ortho = self.orthonormality_error();
        if ortho > EIGEN_TOL {
            return Err(format!("orthonormality error {ortho:e}"));
        }
        let sqrt_pi = stationary_sqrt(g);
        let sign = if self.psi(0, 0) < 0.0 { -1.0 } else { 1.0 };
        let first = (0..self.len())
            .map(|j| (sign * self.psi(0, j) - sqrt_pi[j]).abs())
            .fold(0.0, f64::max);
        if first > VECTOR_TOL {
            return Err(format!("ψ₁ deviates from √π by {first:e}"));
        }
        Ok(())
    }
}

fn stationary_sqrt(g: &Graph) -> Vec<f64> {
    let total = g.degree_sum() as f64;
    g.degrees()
        .into_iter()
        .map(|d| (d as f64 / total).sqrt())
        .collect()
}

/// `Γ = D^{-1/2} A D^{-1/2}`.
pub fn normalized_adjacency(g: &Graph) -> DMatrix<f64> {
    let n = g.vertex_count();
    let inv_sqrt: Vec<f64> = g
        .degrees()
        .into_iter()
        .map(|d| 1.0 / (d as f64).sqrt())
        .collect();
    let mut m = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        let w = inv_sqrt[u] * inv_sqrt[v];
        m[(u, v)] = w;
        m[(v, u)] = w;
    }
    m
}

pub fn normalized_spectrum(g: &Graph) -> Result<Spectrum, SpectralError> {
    if g.vertex_count() < 2 {
        return Err(SpectralError::Unverified(
            "graph needs at least one edge".into(),
        ));
    }
    let eig = SymmetricEigen::try_new(normalized_adjacency(g), f64::EPSILON, 0)
        .ok_or(SpectralError::ConvergenceFailure)?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let eigenvectors = eig.eigenvectors.select_columns(order.iter());
    let mut spectrum = Spectrum {
        eigenvalues,
        eigenvectors,
        verified: false,
        issue: None,
    };
    match spectrum.check(g) {
        Ok(()) => spectrum.verified = true,
        Err(issue) => spectrum.issue = Some(issue),
    }
    Ok(spectrum)
}

fn ensure_verified(s: &Spectrum) -> Result<(), SpectralError> {
    if s.verified {
        Ok(())
    } else {
        Err(SpectralError::Unverified(
            s.issue.clone().unwrap_or_else(|| "not verified".into()),
        ))
    }
}

fn gaps(s: &Spectrum) -> Result<Vec<f64>, SpectralError> {
    (1..s.len())
        .map(|i| {
            let gap = 1.0 - s.eigenvalues[i];
            if gap <= 1e-12 {
                Err(SpectralError::DegenerateGap { index: i + 1, gap })
            } else {
                Ok(gap)
            }
        })
        .collect()
}

/// Per-vertex trapping times from the eigenpairs; entry θ is 0.
pub fn trapping_times_spectral(
    g: &Graph,
    trap: &TrapSpec,
    s: &Spectrum,
) -> Result<Vec<f64>, SpectralError> {
    ensure_verified(s)?;
    let gaps = gaps(s)?;
    let n = g.vertex_count();
    let theta = trap.theta;
    let two_e = g.degree_sum() as f64;
    let d_theta = trap.d_theta as f64;
    let degrees = g.degrees();
    // per-eigenvector weight ψ_iθ / (1 − λ_i)
    let weight: Vec<f64> = (1..n).map(|i| s.psi(i, theta) / gaps[i - 1]).collect();
    let self_term: f64 = (1..n).map(|i| weight[i - 1] * s.psi(i, theta)).sum::<f64>() / d_theta;
    Ok((0..n)
        .map(|j| {
            if j == theta {
                return 0.0;
            }
            let cross: f64 = (1..n).map(|i| weight[i - 1] * s.psi(i, j)).sum();
            two_e * (self_term - cross / (degrees[j] as f64 * d_theta).sqrt())
        })
        .collect())
}

/// Uniform average of the spectral trapping times over non-trap vertices.
pub fn att_spectral(g: &Graph, trap: &TrapSpec, s: &Spectrum) -> Result<f64, SpectralError> {
    let tt = trapping_times_spectral(g, trap, s)?;
    Ok(tt.iter().sum::<f64>() / (g.vertex_count() - 1) as f64)
}

/// Stationary-weighted average `Σ_{j≠θ} π_j TT_j / (1 − π_θ)` in its
/// cancelled form `(2|E|/d_θ)/(1 − π_θ) · Σ_{i≥2} ψ_iθ²/(1 − λ_i)`.
///
/// Equals [`att_spectral`] when the graph is regular, and in general is the
/// quantity bounded below by `2|E|/d_θ − 1` through [`cauchy_bound_certificate`].
pub fn stationary_att_spectral(
    g: &Graph,
    trap: &TrapSpec,
    s: &Spectrum,
) -> Result<f64, SpectralError> {
    ensure_verified(s)?;
    let gaps = gaps(s)?;
    let sum: f64 = (1..s.len())
        .map(|i| s.psi(i, trap.theta).powi(2) / gaps[i - 1])
        .sum();
    let ratio = g.degree_sum() as f64 / trap.d_theta as f64;
    Ok(ratio * sum / (1.0 - trap.pi_theta))
}

/// The two sides of the Cauchy–Schwarz step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyCertificate {
    /// `(Σ_{i≥2} ψ_iθ²/(1−λ_i)) · (Σ_{i≥2} (1−λ_i) ψ_iθ²)`
    pub lhs: f64,
    /// `(Σ_{i≥2} ψ_iθ²)²`
    pub rhs: f64,
    /// `Σ_{i≥2} (1−λ_i) ψ_iθ²`, expected to be 1.
    pub weighted_mass: f64,
    /// `Σ_{i≥2} ψ_iθ²`, expected to be `1 − π_θ`.
    pub tail_mass: f64,
    /// Both identities hold within `1e-8`.
    pub identities_hold: bool,
}

impl CauchyCertificate {
    pub fn holds(&self) -> bool {
        self.lhs >= self.rhs - VECTOR_TOL * self.rhs.max(1.0)
    }

    pub fn is_tight(&self, tol: f64) -> bool {
        (self.lhs - self.rhs).abs() <= tol * self.rhs.max(1.0)
    }
}

pub fn cauchy_bound_certificate(
    _g: &Graph,
    trap: &TrapSpec,
    s: &Spectrum,
) -> Result<CauchyCertificate, SpectralError> {
    ensure_verified(s)?;
    let gaps = gaps(s)?;
    let theta = trap.theta;
    let (mut inv, mut weighted, mut tail) = (0.0, 0.0, 0.0);
    for i in 1..s.len() {
        let sq = s.psi(i, theta).powi(2);
        inv += sq / gaps[i - 1];
        weighted += sq * gaps[i - 1];
        tail += sq;
    }
    let identities_hold =
        (weighted - 1.0).abs() <= VECTOR_TOL && (tail - (1.0 - trap.pi_theta)).abs() <= VECTOR_TOL;
    Ok(CauchyCertificate {
        lhs: inv * weighted,
        rhs: tail * tail,
        weighted_mass: weighted,
        tail_mass: tail,
        identities_hold,
    })
}
