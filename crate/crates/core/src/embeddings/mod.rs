//! Distortion of graph embeddings, the truncated-distance witness map and
//! random distance-to-set embeddings into `{0, …, Δ}^K` with the sup norm.
//!
//! Both constructions land in sup-norm grids far too large to materialise,
//! so their images are stored as integer coordinates per vertex
//! ([`CoordinateMap`]) and distances are evaluated on demand.

mod distortion;
mod jls;
mod witness;

pub use distortion::{embedding_distortion, EmbeddingReport};
pub use jls::{default_delta, jls_embedding, jls_params, universal_space_size, JlsOutcome, JlsParams, UniversalSize};
pub use witness::{witness_certificate, witness_map, witness_params, WitnessParams};

use thiserror::Error;

use crate::graph::GraphError;
use crate::metric::MetricError;
use crate::poincare::{ImageDistances, PoincareError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmbeddingsError {
    #[error("degree must be at least 3 (got {0})")]
    DegreeTooSmall(usize),

    #[error("ln N = {0} is too small: need ⌊ln ln N⌋ ≥ 1")]
    TargetTooSmall(f64),

    #[error("distortion target {0} must be at least 1")]
    InvalidDistortion(f64),

    #[error("constant c1 = {0} must be positive")]
    InvalidC1(f64),

    #[error("graph diameter {diameter} exceeds Δ = {delta}")]
    DiameterExceedsDelta { diameter: usize, delta: u64 },

    #[error("retry budget must be at least 1")]
    ZeroRetries,

    #[error("coordinate {value} of vertex {vertex} is outside [0, {delta}]")]
    CoordinateOutOfRange { vertex: usize, value: i64, delta: u64 },

    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error(transparent)]
    Metric(#[from] MetricError),

    #[error(transparent)]
    Poincare(#[from] PoincareError),
}

/// `sign(x)·min{k, |x|}`.
pub fn trunc(k: f64, x: f64) -> f64 {
    x.clamp(-k, k)
}

/// Vertices mapped to integer points of a sup-norm space.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateMap {
    n: usize,
    dim: usize,
    coords: Vec<i64>,
    points: f64,
}

impl CoordinateMap {
    /// `coords` holds `dim` entries per vertex; `points` is the size of the target space.
    pub fn new(n: usize, dim: usize, coords: Vec<i64>, points: f64) -> Self {
        assert_eq!(coords.len(), n * dim, "coordinate table must have n·dim entries");
        Self { n, dim, coords, points }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coordinates(&self, v: usize) -> &[i64] {
        &self.coords[v * self.dim..(v + 1) * self.dim]
    }

    /// Whitespace-separated coordinates, one vertex per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for v in 0..self.n {
            let row: Vec<String> = self.coordinates(v).iter().map(i64::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl ImageDistances for CoordinateMap {
    fn vertex_count(&self) -> usize {
        self.n
    }

    fn image_distance(&self, v: usize, u: usize) -> f64 {
        let a = self.coordinates(v);
        let b = self.coordinates(u);
        a.iter().zip(b).map(|(x, y)| (x - y).unsigned_abs()).max().unwrap_or(0) as f64
    }

    fn target_points(&self) -> f64 {
        self.points
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trunc_examples() {
        assert_eq!(trunc(3.0, 5.0), 3.0);
        assert_eq!(trunc(3.0, -5.0), -3.0);
        assert_eq!(trunc(3.0, 2.0), 2.0);
        assert_eq!(trunc(0.0, 2.0), 0.0);
    }

    #[test]
    fn sup_norm_distances() {
        let f = CoordinateMap::new(3, 2, vec![0, 0, 3, -1, 1, 4], 100.0);
        assert_eq!(f.image_distance(0, 1), 3.0);
        assert_eq!(f.image_distance(1, 2), 5.0);
        assert_eq!(f.image_distance(2, 2), 0.0);
        assert_eq!(f.to_text(), "0 0\n3 -1\n1 4\n");
        let hist = f.pair_histogram();
        assert_eq!(hist.iter().map(|&(_, c)| c).sum::<u64>(), 9);
    }
}
