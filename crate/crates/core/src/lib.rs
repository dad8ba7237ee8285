//! Average trapping time (ATT) of unbiased random walks on simple connected
//! graphs with a single absorbing trap.
//!
//! * [`graph`]: graph type, standard families, star-type composition,
//!   subdivision, random generators and edge-list I/O.
//! * [`exact`]: trapping times from the absorbing linear system, ATT,
//!   Kemeny's constant and the `2|E|/d_θ − 1` lower bound.
//! * [`spectral`]: the same quantities from the normalized adjacency spectrum.
//! * [`bounds`]: closed forms and bounds for star-type graphs and their
//!   component subdivisions.
//! * [`montecarlo`]: seeded walk simulation.
//!
//! ```
//! use trapping::exact::{analyze, TrapSpec};
//! use trapping::graph::cycle;
//!
//! let g = cycle(4).unwrap();
//! let (_, report) = analyze(&g, &TrapSpec::new(&g, 0).unwrap()).unwrap();
//! assert!((report.att - 10.0 / 3.0).abs() < 1e-12);
//! assert!(!report.optimal);
//! ```

pub mod bounds;
pub mod exact;
pub mod graph;
pub mod linalg;
pub mod montecarlo;
pub mod spectral;

pub use exact::{TrapSpec, TrappingReport, TrappingTimes};
pub use graph::{Graph, GraphError, StarTypeSpec, VertexId};
