//! The multistage random regular graph model and the combinatorial tools
//! around it: canonical labellings, seed maps, equitable decompositions,
//! random matchings, restriction of concentrated maps, and Monte Carlo
//! checks of the associated probability bounds.

mod canonical;
mod decomposition;
mod draw;
mod manifest;
mod matching;
mod restriction;
mod seeds;
mod typical;

pub use canonical::{canonical_key, canonical_rep, CanonicalCache, CANONICAL_MAX_ORDER};
pub use decomposition::{decomposition_colors, equitable_decomposition, Decomposition};
pub use draw::{draw_direct, draw_model, draw_model_with, model_distribution_test, DistributionTest, ModelDraw};
pub use manifest::Manifest;
pub use matching::{
    matching_avoidance_bound, matching_avoidance_mc, perfect_matchings, random_perfect_matching, MatchingMc,
};
pub use restriction::{restriction_concentration_mc, RestrictionMc};
pub use seeds::{check_invariance, order_from_keys, seed_map_g, seed_map_h, SeedTable};
pub use typical::{typical_diagnostic, typical_vertex_sets, TypicalDiagnostic, TypicalSets};

use thiserror::Error;

use crate::graph::GraphError;
use crate::poincare::PoincareError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelsError {
    #[error("canonical labelling is brute force and limited to n ≤ {cap} (got n = {n})")]
    CanonicalCap { n: usize, cap: usize },

    #[error("cannot delete {ell} edges from a graph with {edges} edges")]
    InvalidDeletion { ell: usize, edges: usize },

    #[error("set of size {0} has no perfect matching")]
    OddSet(usize),

    #[error("seed set is empty")]
    EmptySeedSet,

    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("order has {len} entries for {expected} seeds or is not a permutation")]
    InvalidOrder { len: usize, expected: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("decomposition would need {0} parts")]
    TooManyParts(u64),

    #[error("malformed manifest: {0}")]
    Manifest(String),

    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error(transparent)]
    Poincare(#[from] PoincareError),
}
