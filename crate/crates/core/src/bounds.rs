//! Closed forms and bounds for star-type graphs with the trap on the
//! external vertex `u`, and for the graphs `𝒢ⁿ` obtained by subdividing
//! only the component edges `n` times.
//!
//! Everything with integer inputs is evaluated in exact rationals.
//! Throughout, `d_θ = d_u = Σ|V_i|` and `E = Σ|E_i|`.

use num::rational::Ratio;
use num::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::graph::StarTypeSpec;

pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("component {component} is not {degree}-regular")]
    NotRegular { component: usize, degree: usize },
    #[error("subdivision order must be at least {min}, got {order}")]
    InvalidOrder { order: usize, min: usize },
    #[error("degree exponent {0} is outside (2, 3)")]
    GammaOutOfRange(f64),
}

fn int(x: usize) -> Rational {
    Rational::from_integer(x as i128)
}

pub fn to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn sums(spec: &StarTypeSpec) -> (Rational, Rational) {
    (int(spec.component_edges()), int(spec.component_vertices()))
}

/// `2|E′|/d_θ − 1`, the exact ATT of a star-type graph trapped at `u`.
pub fn att_startype_closed_form(spec: &StarTypeSpec) -> Rational {
    int(2 * spec.composed_edge_count()) / int(spec.component_vertices()) - int(1)
}

/// Kemeny's constant of a star-type graph trapped at `u` and its
/// average-degree approximation `⟨k′⟩ + 1/⟨k′⟩ − 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KemenyClosedForm {
    pub exact: Rational,
    pub approx: Rational,
}

pub fn kemeny_startype(spec: &StarTypeSpec) -> KemenyClosedForm {
    let two_e = int(2 * spec.composed_edge_count());
    let v = int(spec.composed_vertex_count());
    let exact = two_e / (v - 1) + (v - 1) / two_e - 2;
    let mean_degree = two_e / v;
    KemenyClosedForm {
        exact,
        approx: mean_degree + mean_degree.recip() - 2,
    }
}

/// `(|𝒱ⁿ|, |ℰⁿ|) = (|V′| + nE, d_u + (n+1)E)`.
pub fn subdivided_counts(spec: &StarTypeSpec, n: usize) -> (usize, usize) {
    let e = spec.component_edges();
    (
        spec.composed_vertex_count() + n * e,
        spec.component_vertices() + (n + 1) * e,
    )
}

/// General lower bound `2|ℰⁿ|/d_θ − 1` on `𝒢ⁿ`.
pub fn subdivided_lower(spec: &StarTypeSpec, n: usize) -> Rational {
    let (_, edges) = subdivided_counts(spec, n);
    int(2 * edges) / int(spec.component_vertices()) - 1
}

/// `4E/d_θ + 1`, the lower bound on `𝒢¹`.
pub fn lemma2_lower(spec: &StarTypeSpec) -> Rational {
    let (e, d) = sums(spec);
    e * 4 / d + 1
}

/// `(4E² + d_θE + 4E)/(d_θ + E) + 1`, an upper bound on the ATT of `𝒢¹`.
pub fn prop1_upper(spec: &StarTypeSpec) -> Rational {
    let (e, d) = sums(spec);
    (e * e * 4 + d * e + e * 4) / (d + e) + 1
}

/// Mean trapping time of `𝒢¹` over the original component vertices only,
/// `4E/Σ|V_i| + 1`; it coincides with [`lemma2_lower`].
pub fn restricted_att(spec: &StarTypeSpec) -> Rational {
    let (e, v) = sums(spec);
    e * 4 / v + 1
}

/// `((5 + 2d)E + (1 + d/2)d_θ)/(d_θ + E)` for `d`-regular components; the
/// exact ATT of `𝒢¹` in that case.
pub fn corollary1_upper(spec: &StarTypeSpec, d: usize) -> Result<Rational, BoundsError> {
    if let Some(component) = spec
        .components()
        .iter()
        .position(|c| c.regular_degree() != Some(d))
    {
        return Err(BoundsError::NotRegular {
            component,
            degree: d,
        });
    }
    let (e, dt) = sums(spec);
    let dd = int(d);
    Ok(((dd * 2 + 5) * e + (dd / 2 + 1) * dt) / (dt + e))
}

/// Parity-dependent upper bound on the ATT of `𝒢ⁿ`, `n ≥ 1`.
pub fn corollary2_upper(spec: &StarTypeSpec, n: usize) -> Result<Rational, BoundsError> {
    if n == 0 {
        return Err(BoundsError::InvalidOrder { order: n, min: 1 });
    }
    let (e, d) = sums(spec);
    let nn = int(n);
    let half = n / 2;
    let parity_terms = if n.is_multiple_of(2) {
        int(4 * (1..=half).map(|i| i * i).sum::<usize>())
    } else {
        int(2 * (1..=half).map(|i| i * (2 * i + 1)).sum::<usize>())
            + int((0..=half).map(|i| 2 * i + 1).sum::<usize>())
    };
    let linear = nn * d / 2 + (nn + 1) * 2 + parity_terms;
    let numerator = nn * (nn + 1) * e * e + linear * e + d;
    let (vertices, _) = subdivided_counts(spec, n);
    Ok(numerator / int(vertices - 1))
}

/// Growth exponent of the hub-trap ATT lower bound for a scale-free degree
/// distribution `P(k) ∼ k^{−γ}`, using `k_max ∼ |V|^{1/(γ−1)}`: `(γ−2)/(γ−1)`.
pub fn scalefree_scaling_exponent(gamma: f64) -> Result<f64, BoundsError> {
    if !(gamma > 2.0 && gamma < 3.0) {
        return Err(BoundsError::GammaOutOfRange(gamma));
    }
    Ok((gamma - 2.0) / (gamma - 1.0))
}

/// Bounds for `𝒢ⁿ` derived from a star-type specification.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSet {
    pub n: usize,
    pub sum_e: usize,
    pub d_theta: usize,
    /// `2|ℰⁿ|/d_θ − 1`; equals the `𝒢¹` bound `4E/d_θ + 1` when `n = 1`.
    pub lower: f64,
    pub upper_prop1: Option<f64>,
    pub upper_cor1: Option<f64>,
    pub upper_cor2: Option<f64>,
    pub restricted_att: Option<f64>,
    /// `E = 0`: the graph is a star and the upper bounds are attained.
    pub degenerate: bool,
}

impl BoundSet {
    pub fn new(spec: &StarTypeSpec, n: usize) -> Self {
        let first_order = n == 1;
        Self {
            n,
            sum_e: spec.component_edges(),
            d_theta: spec.component_vertices(),
            lower: to_f64(subdivided_lower(spec, n)),
            upper_prop1: first_order.then(|| to_f64(prop1_upper(spec))),
            upper_cor1: first_order
                .then(|| spec.regular_degree())
                .flatten()
                .and_then(|d| corollary1_upper(spec, d).ok())
                .map(to_f64),
            upper_cor2: corollary2_upper(spec, n).ok().map(to_f64),
            restricted_att: first_order.then(|| to_f64(restricted_att(spec))),
            degenerate: spec.component_edges() == 0,
        }
    }

    /// Compares an exact ATT of `𝒢ⁿ` against every available bound.
    ///
    /// Inequalities are strict except in the degenerate star case, where the
    /// bounds are attained and the comparison is non-strict.
    pub fn check(&self, att: f64, tol: f64) -> Sandwich {
        let slack = tol * att.abs().max(1.0);
        let below = |bound: f64| {
            if self.degenerate {
                bound <= att + slack
            } else {
                bound < att - slack
            }
        };
        let above = |bound: f64| {
            if self.degenerate {
                att <= bound + slack
            } else {
                att < bound - slack
            }
        };
        Sandwich {
            lower: if self.n == 0 {
                self.lower <= att + slack
            } else {
                below(self.lower)
            },
            prop1: self.upper_prop1.map(above),
            cor2: self.upper_cor2.map(above),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Sandwich {
    pub lower: bool,
    pub prop1: Option<bool>,
    pub cor2: Option<bool>,
}

impl Sandwich {
    pub fn passed(&self) -> bool {
        self.lower && self.prop1.unwrap_or(true) && self.cor2.unwrap_or(true)
    }
}
