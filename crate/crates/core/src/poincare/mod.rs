//! Per-map statistics and the Poincaré constant `γ(G, ρ^q)`.
//!
//! All averages run over ordered vertex pairs `(v, u) ∈ [n]²`, the diagonal
//! included. A map whose average and Dirichlet form both vanish is
//! degenerate and excluded from the supremum defining `γ`.

mod exact;
mod map;
mod search;
mod spectral;
mod stats;

pub use exact::{all_maps, gamma_exact, gamma_exact_rational, gamma_exact_with_cap, AllMaps, GammaExact, EXHAUSTIVE_CAP};
pub use map::{ImageDistances, VertexMap};
pub use search::{gamma_lower_search, SearchResult};
pub use spectral::{average_distortion, gamma_euclidean_sq, AverageDistortion};
pub use stats::{
    dirichlet, empirical_average, empirical_quantile, gamma_of_map, gamma_report, is_concentrated, Concentration,
    CountDisplay, GammaReport, RatioDisplay,
};

use thiserror::Error;

use crate::graph::GraphError;
use crate::metric::MetricError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PoincareError {
    #[error("vertex {vertex} is mapped to point {point}, but the target has {points} points")]
    PointOutOfRange { vertex: usize, point: usize, points: usize },

    #[error("map has {map} entries but the graph has {graph} vertices")]
    LengthMismatch { map: usize, graph: usize },

    #[error("exponent {0} must be positive and finite")]
    InvalidExponent(f64),

    #[error("quantile level {0} outside (0, 1)")]
    InvalidTau(f64),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("no non-constant map exists (need at least 2 vertices and 2 points); γ is undefined")]
    NoNonConstantMap,

    #[error("exhaustive search over {maps:e} maps exceeds the cap {cap:e}; use gamma_lower_search instead")]
    ExhaustiveCap { maps: f64, cap: f64 },

    #[error("map is constant")]
    ConstantMap,

    #[error("graph is not connected")]
    Disconnected,

    #[error("distance ({i}, {j}) is not an integer")]
    NonIntegral { i: usize, j: usize },

    #[error("iteration budget must be at least 1")]
    ZeroIterations,

    #[error("malformed map file: {0}")]
    Parse(String),

    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error(transparent)]
    Metric(#[from] MetricError),
}
