//! Nonlinear Poincaré constants of finite graphs into finite metric spaces.
//!
//! The crate computes, bounds and empirically certifies the constant
//! `γ(G, ρ^q)`: the smallest `γ` such that for every map `f: V(G) → M`
//!
//! ```text
//! (1/n²) Σ_{v,u} ρ(f(v), f(u))^q  ≤  γ · (1/|E|) Σ_{{v,u} ∈ E} ρ(f(v), f(u))^q
//! ```
//!
//! Modules:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`] | simple graphs, BFS distances, Cheeger constant, spectra, random regular graphs |
//! | [`metric`] | finite metrics, snowflakes, aspect ratio, well-conditioned reduction, grids |
//! | [`poincare`] | empirical statistics, concentration, Dirichlet forms, exact/heuristic γ |
//! | [`extrapolation`] | exponent-comparison constants and inequality verifiers (log-space) |
//! | [`embeddings`] | distortion, the truncated-distance witness map, random distance-to-set embeddings |
//! | [`models`] | multistage random regular model, seed maps, matchings, decomposition |
//! | [`corpus`] | small-graph enumeration and random metric generators used by the test suites |
//!
//! All randomness flows through [`rng::SeedStream`], so every experiment is
//! reproducible from a single `u64`.

// Negated float comparisons are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod corpus;
pub mod embeddings;
pub mod extrapolation;
pub mod graph;
pub mod metric;
pub mod models;
pub mod poincare;
pub mod rng;
pub mod stats;

pub use graph::{Graph, GraphError};
pub use metric::{FiniteMetric, MetricError};
pub use poincare::{GammaReport, VertexMap};
