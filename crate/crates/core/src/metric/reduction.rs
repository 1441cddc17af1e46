//! Reduction of an arbitrary finite metric to one with aspect ratio at most `n⁴`.
//!
//! For each distinct distance `τ` the space gets a rescaled copy with
//! `ρ_τ(x, y) = min{n², ρ(x, y)/τ + 1/n²}`; distinct copies are `n²` apart.
//! Copies are ordered by increasing `τ`, and point `(c, x)` has index `c·N + x`.

use std::sync::Arc;

use super::{FiniteMetric, MetricError, Storage};
use crate::poincare::VertexMap;

/// Relative tolerance below which two distances index the same copy.
pub const CLUSTER_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    metric: Arc<FiniteMetric>,
    taus: Vec<f64>,
    base_points: usize,
    graph_order: usize,
}

impl Reduction {
    pub fn metric(&self) -> &Arc<FiniteMetric> {
        &self.metric
    }

    /// Scale of each copy, increasing.
    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    pub fn base_points(&self) -> usize {
        self.base_points
    }

    pub fn graph_order(&self) -> usize {
        self.graph_order
    }

    pub fn point(&self, cluster: usize, x: usize) -> usize {
        cluster * self.base_points + x
    }

    /// `(cluster, original point)` of a reduced point.
    pub fn split(&self, point: usize) -> (usize, usize) {
        (point / self.base_points, point % self.base_points)
    }

    /// Copy whose scale represents the distance `tau`.
    pub fn cluster_for(&self, tau: f64) -> Option<usize> {
        let c = self.taus.partition_point(|&t| t < tau);
        (c < self.taus.len()).then_some(c)
    }
}

/// Builds the well-conditioned space for graphs on `n` vertices.
pub fn well_conditioned_reduction(m: &FiniteMetric, n: usize) -> Result<Reduction, MetricError> {
    let big_n = m.len();
    if big_n < 2 {
        return Err(MetricError::TooFewPoints(big_n));
    }
    if n < 2 {
        return Err(MetricError::TooFewPoints(n));
    }
    let taus = m.distinct_distances(CLUSTER_REL_TOL);
    let cap = (n * n) as f64;
    let shift = 1.0 / cap;
    let size = taus.len() * big_n;
    let mut data = vec![cap; size * size];
    for (c, &tau) in taus.iter().enumerate() {
        for x in 0..big_n {
            for y in 0..big_n {
                let value = if x == y { 0.0 } else { (m.dist(x, y) / tau + shift).min(cap) };
                data[(c * big_n + x) * size + c * big_n + y] = value;
            }
        }
    }
    let metric = FiniteMetric { storage: Storage::Dense { n: size, data }, labels: None };
    Ok(Reduction { metric: Arc::new(metric), taus, base_points: big_n, graph_order: n })
}

/// Sends `v` to the copy of `f(v)` in the cluster of `τ(f) = max ρ(f(v), f(u))`.
pub fn lift_map(f: &VertexMap, reduction: &Reduction) -> Result<VertexMap, MetricError> {
    let images = f.distinct_images();
    if images.len() < 2 {
        return Err(MetricError::ConstantMap);
    }
    let target = f.target();
    let tau = images
        .iter()
        .flat_map(|&x| images.iter().map(move |&y| (x, y)))
        .map(|(x, y)| target.dist(x, y))
        .fold(0.0, f64::max);
    let cluster = reduction.cluster_for(tau).expect("every realised distance has a cluster");
    let assignment = f.assignment().iter().map(|&x| reduction.point(cluster, x)).collect();
    Ok(VertexMap::new(reduction.metric.clone(), assignment).expect("lifted points are in range"))
}
