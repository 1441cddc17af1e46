//! Finite metric spaces.
//!
//! A [`FiniteMetric`] is either a validated dense distance matrix or an
//! implicit sup-norm grid `{−k,…,k}^s` whose distances are decoded from point
//! indices on demand.

mod cost;
mod reduction;

pub use cost::{power_cost, CostMatrix};
pub use reduction::{lift_map, well_conditioned_reduction, Reduction, CLUSTER_REL_TOL};

use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{DistanceTable, Graph};

/// Default cap on the number of grid points.
pub const GRID_POINT_CAP: u64 = 1_000_000;

/// Largest space that will be materialised as a dense matrix.
pub const DENSE_POINT_LIMIT: usize = 4096;

/// Relative tolerance (times the diameter) for the triangle inequality.
pub const TRIANGLE_REL_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("distance matrix is not square (row {row} has {len} entries, expected {n})")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("metric space has no points")]
    Empty,

    #[error("non-finite distance at ({i}, {j})")]
    NonFinite { i: usize, j: usize },

    #[error("nonzero diagonal entry at ({i}, {i})")]
    NonzeroDiagonal { i: usize },

    #[error("asymmetric distances at ({i}, {j}) and ({j}, {i})")]
    Asymmetric { i: usize, j: usize },

    #[error("negative distance at ({i}, {j})")]
    Negative { i: usize, j: usize },

    #[error("zero distance between distinct points ({i}, {j})")]
    ZeroOffDiagonal { i: usize, j: usize },

    #[error("triangle inequality violated at ({i}, {k}, {via}): d({i},{k}) > d({i},{via}) + d({via},{k})")]
    Triangle { i: usize, k: usize, via: usize },

    #[error("operation needs at least 2 points, metric has {0}")]
    TooFewPoints(usize),

    #[error("snowflake parameter {0} outside (0, 1)")]
    EpsilonOutOfRange(f64),

    #[error("exponent {0} must be positive and finite")]
    InvalidExponent(f64),

    #[error("grid with (2k+1)^s = {points} points exceeds the cap {cap}")]
    PointCap { points: f64, cap: u64 },

    #[error("metric with {0} points is too large to materialise as a matrix")]
    TooLargeToMaterialize(usize),

    #[error("map is constant, so it has no largest positive image distance")]
    ConstantMap,

    #[error("path metric needs a connected graph")]
    Disconnected,

    #[error("malformed metric file: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Storage {
    Dense { n: usize, data: Vec<f64> },
    Grid { k: u32, s: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetric {
    storage: Storage,
    labels: Option<Vec<String>>,
}

impl FiniteMetric {
    /// Validates a full distance matrix given as rows.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(MetricError::NotSquare { row, len: r.len(), n });
            }
            data.extend(r);
        }
        Self::from_flat(n, data)
    }

    /// Validates a row-major `n × n` distance matrix.
    pub fn from_flat(n: usize, data: Vec<f64>) -> Result<Self, MetricError> {
        assert_eq!(data.len(), n * n, "flat matrix must have n² entries");
        validate(n, &data)?;
        Ok(Self { storage: Storage::Dense { n, data }, labels: None })
    }

    /// The metric with every off-diagonal distance 1.
    pub fn uniform(n: usize) -> Result<Self, MetricError> {
        if n == 0 {
            return Err(MetricError::Empty);
        }
        let data = (0..n * n).map(|i| if i / n == i % n { 0.0 } else { 1.0 }).collect();
        Ok(Self { storage: Storage::Dense { n, data }, labels: None })
    }

    /// Shortest-path metric of a connected graph.
    pub fn path_metric(g: &Graph) -> Result<Self, MetricError> {
        if !g.is_connected() {
            return Err(MetricError::Disconnected);
        }
        let n = g.order();
        let table = DistanceTable::new(g);
        let data = (0..n).flat_map(|v| table.row(v).iter().map(|&d| d as f64).collect::<Vec<_>>()).collect();
        Ok(Self { storage: Storage::Dense { n, data }, labels: None })
    }

    /// Points on a line at the given positions (must be distinct).
    pub fn line(positions: &[f64]) -> Result<Self, MetricError> {
        let n = positions.len();
        let data = (0..n * n).map(|i| (positions[i / n] - positions[i % n]).abs()).collect();
        Self::from_flat(n, data)
    }

    /// `{−k,…,k}^s` with the sup-norm, at most [`GRID_POINT_CAP`] points.
    pub fn linf_grid(k: u32, s: u32) -> Result<Self, MetricError> {
        Self::linf_grid_with_cap(k, s, GRID_POINT_CAP)
    }

    pub fn linf_grid_with_cap(k: u32, s: u32, cap: u64) -> Result<Self, MetricError> {
        let points = (2.0 * k as f64 + 1.0).powi(s as i32);
        if points > cap as f64 {
            return Err(MetricError::PointCap { points, cap });
        }
        Ok(Self { storage: Storage::Grid { k, s }, labels: None })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len(), "one label per point");
        self.labels = Some(labels);
        self
    }

    pub fn len(&self) -> usize {
        match &self.storage {
            Storage::Dense { n, .. } => *n,
            Storage::Grid { k, s } => (2 * *k as usize + 1).pow(*s),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        match &self.storage {
            Storage::Dense { n, data } => data[i * n + j],
            Storage::Grid { k, s } => {
                let base = 2 * *k as usize + 1;
                let (mut a, mut b, mut best) = (i, j, 0usize);
                for _ in 0..*s {
                    best = best.max((a % base).abs_diff(b % base));
                    a /= base;
                    b /= base;
                }
                best as f64
            }
        }
    }

    /// Parameters `(k, s)` when this is a sup-norm grid.
    pub fn grid_shape(&self) -> Option<(u32, u32)> {
        match self.storage {
            Storage::Grid { k, s } => Some((k, s)),
            Storage::Dense { .. } => None,
        }
    }

    /// Coordinates of grid point `i`, least significant first.
    pub fn grid_coordinates(&self, i: usize) -> Option<Vec<i64>> {
        let (k, s) = self.grid_shape()?;
        let base = 2 * k as usize + 1;
        let mut rest = i;
        Some(
            (0..s)
                .map(|_| {
                    let digit = rest % base;
                    rest /= base;
                    digit as i64 - k as i64
                })
                .collect(),
        )
    }

    /// Index of the grid point with the given coordinates.
    pub fn grid_index(&self, coords: &[i64]) -> Option<usize> {
        let (k, s) = self.grid_shape()?;
        if coords.len() != s as usize || coords.iter().any(|c| c.unsigned_abs() > k as u64) {
            return None;
        }
        let base = 2 * k as usize + 1;
        Some(coords.iter().rev().fold(0usize, |acc, &c| acc * base + (c + k as i64) as usize))
    }

    pub fn label(&self, i: usize) -> Option<String> {
        if let Some(labels) = &self.labels {
            return Some(labels[i].clone());
        }
        self.grid_coordinates(i).map(|c| format!("{c:?}"))
    }

    pub fn diameter(&self) -> f64 {
        match &self.storage {
            Storage::Dense { data, .. } => data.iter().copied().fold(0.0, f64::max),
            Storage::Grid { k, s } => {
                if *s == 0 {
                    0.0
                } else {
                    2.0 * *k as f64
                }
            }
        }
    }

    /// Smallest distance between distinct points.
    pub fn min_distance(&self) -> Result<f64, MetricError> {
        if self.len() < 2 {
            return Err(MetricError::TooFewPoints(self.len()));
        }
        Ok(match &self.storage {
            Storage::Dense { n, data } => {
                (0..*n).flat_map(|i| (i + 1..*n).map(move |j| (i, j))).map(|(i, j)| data[i * n + j]).fold(f64::INFINITY, f64::min)
            }
            Storage::Grid { .. } => 1.0,
        })
    }

    /// `diam / min distance`.
    pub fn aspect_ratio(&self) -> Result<f64, MetricError> {
        Ok(self.diameter() / self.min_distance()?)
    }

    /// Whether `a(M) ≤ e^N`, compared in log-space.
    pub fn is_well_conditioned(&self) -> Result<bool, MetricError> {
        Ok(self.aspect_ratio()?.ln() <= self.len() as f64)
    }

    /// Distinct nonzero distances in increasing order; values within `rel_tol`
    /// (relative) of their neighbour are merged and represented by the group maximum.
    pub fn distinct_distances(&self, rel_tol: f64) -> Vec<f64> {
        let n = self.len();
        let mut all: Vec<f64> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| self.dist(i, j)).collect();
        all.sort_by(f64::total_cmp);
        let mut groups: Vec<f64> = Vec::new();
        for x in all {
            match groups.last_mut() {
                Some(last) if x - *last <= rel_tol * x => *last = x,
                _ => groups.push(x),
            }
        }
        groups
    }

    /// Dense copy of the distance matrix.
    pub fn to_matrix(&self) -> Result<Vec<f64>, MetricError> {
        let n = self.len();
        if let Storage::Dense { data, .. } = &self.storage {
            return Ok(data.clone());
        }
        if n > DENSE_POINT_LIMIT {
            return Err(MetricError::TooLargeToMaterialize(n));
        }
        Ok((0..n * n).map(|i| self.dist(i / n, i % n)).collect())
    }

    fn map_distances(&self, f: impl Fn(f64) -> f64) -> Result<Self, MetricError> {
        let n = self.len();
        let data = self.to_matrix()?.into_iter().map(|x| if x == 0.0 { 0.0 } else { f(x) }).collect();
        Ok(Self { storage: Storage::Dense { n, data }, labels: self.labels.clone() })
    }

    /// The metric `ρ^{1−ε}`.
    pub fn snowflake(&self, eps: f64) -> Result<Self, MetricError> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(MetricError::EpsilonOutOfRange(eps));
        }
        self.map_distances(|x| x.powf(1.0 - eps))
    }

    /// The metric `c·ρ` for `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self, MetricError> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(MetricError::InvalidExponent(c));
        }
        self.map_distances(|x| c * x)
    }

    /// Text form: `N`, then `N` rows of shortest round-trip decimals.
    pub fn to_text(&self) -> Result<String, MetricError> {
        let n = self.len();
        let data = self.to_matrix()?;
        let mut out = format!("{n}\n");
        for i in 0..n {
            for j in 0..n {
                if j > 0 {
                    out.push(' ');
                }
                write!(out, "{:?}", data[i * n + j]).expect("writing to a String cannot fail");
            }
            out.push('\n');
        }
        Ok(out)
    }
}

impl FromStr for FiniteMetric {
    type Err = MetricError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| MetricError::Parse("missing header line".into()))?;
        let n: usize = header.parse().map_err(|_| MetricError::Parse(format!("bad point count {header:?}")))?;
        let mut rows = Vec::with_capacity(n);
        for line in lines.by_ref().take(n) {
            let row: Result<Vec<f64>, _> = line.split_whitespace().map(str::parse::<f64>).collect();
            rows.push(row.map_err(|e| MetricError::Parse(format!("{e} in row {line:?}")))?);
        }
        if rows.len() != n {
            return Err(MetricError::Parse(format!("header announces {n} rows, found {}", rows.len())));
        }
        if let Some(extra) = lines.next() {
            return Err(MetricError::Parse(format!("unexpected trailing line {extra:?}")));
        }
        if n == 0 {
            return Err(MetricError::Empty);
        }
        Self::from_rows(rows)
    }
}

/// Reports the first violated axiom in a fixed scan order.
fn validate(n: usize, d: &[f64]) -> Result<(), MetricError> {
    if n == 0 {
        return Err(MetricError::Empty);
    }
    for i in 0..n {
        for j in 0..n {
            if !d[i * n + j].is_finite() {
                return Err(MetricError::NonFinite { i, j });
            }
        }
    }
    for i in 0..n {
        if d[i * n + i] != 0.0 {
            return Err(MetricError::NonzeroDiagonal { i });
        }
        for j in i + 1..n {
            let (a, b) = (d[i * n + j], d[j * n + i]);
            if a != b {
                return Err(MetricError::Asymmetric { i, j });
            }
            if a < 0.0 {
                return Err(MetricError::Negative { i, j });
            }
            if a == 0.0 {
                return Err(MetricError::ZeroOffDiagonal { i, j });
            }
        }
    }
    let tol = TRIANGLE_REL_TOL * d.iter().copied().fold(0.0, f64::max);
    let violation = (0..n).into_par_iter().find_map_first(|i| {
        for k in 0..n {
            let direct = d[i * n + k];
            for via in 0..n {
                if direct > d[i * n + via] + d[via * n + k] + tol {
                    return Some(MetricError::Triangle { i, k, via });
                }
            }
        }
        None
    });
    violation.map_or(Ok(()), Err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn validation_examples() {
        assert!(FiniteMetric::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).is_ok());
        let bad = vec![vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 1.0], vec![3.0, 1.0, 0.0]];
        assert_eq!(FiniteMetric::from_rows(bad), Err(MetricError::Triangle { i: 0, k: 2, via: 1 }));
        assert_eq!(
            FiniteMetric::from_rows(vec![vec![0.0, 1.0], vec![2.0, 0.0]]),
            Err(MetricError::Asymmetric { i: 0, j: 1 })
        );
        assert_eq!(
            FiniteMetric::from_rows(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]),
            Err(MetricError::Negative { i: 0, j: 1 })
        );
        assert_eq!(
            FiniteMetric::from_rows(vec![vec![0.0, 0.0], vec![0.0, 0.0]]),
            Err(MetricError::ZeroOffDiagonal { i: 0, j: 1 })
        );
        assert!(matches!(FiniteMetric::from_rows(vec![vec![0.0, 1.0]]), Err(MetricError::NotSquare { .. })));
        assert!(FiniteMetric::path_metric(&Graph::petersen()).is_ok());
    }

    #[test]
    fn snowflake_examples() {
        let m = FiniteMetric::line(&[0.0, 4.0]).unwrap();
        assert!((m.snowflake(0.5).unwrap().dist(0, 1) - 2.0).abs() < 1e-12);
        let near = m.snowflake(1e-9).unwrap();
        assert!((near.dist(0, 1) - 4.0).abs() < 1e-8);
        let u = FiniteMetric::uniform(4).unwrap();
        assert_eq!(u.snowflake(0.3).unwrap(), u);
        assert_eq!(m.snowflake(1.0), Err(MetricError::EpsilonOutOfRange(1.0)));
        assert_eq!(m.snowflake(0.0), Err(MetricError::EpsilonOutOfRange(0.0)));
    }

    #[test]
    fn aspect_ratio_examples() {
        let line = FiniteMetric::line(&[0.0, 1.0, 3.0]).unwrap();
        assert_eq!(line.aspect_ratio().unwrap(), 3.0);
        assert!(line.is_well_conditioned().unwrap());
        // Two points always have aspect ratio 1; three points can reach e^4 > e^3.
        assert_eq!(FiniteMetric::line(&[0.0, 3f64.exp()]).unwrap().aspect_ratio().unwrap(), 1.0);
        let wide = FiniteMetric::line(&[0.0, 1.0, 1.0 + 4f64.exp()]).unwrap();
        assert!(!wide.is_well_conditioned().unwrap());
        let edge = FiniteMetric::line(&[0.0, 1.0, 1.0 + 2.9f64.exp()]).unwrap();
        assert!(edge.is_well_conditioned().unwrap());
        let p3 = FiniteMetric::path_metric(&Graph::path(3)).unwrap();
        assert_eq!(p3.aspect_ratio().unwrap(), 2.0);
        assert!(p3.is_well_conditioned().unwrap());
        assert_eq!(FiniteMetric::uniform(1).unwrap().aspect_ratio(), Err(MetricError::TooFewPoints(1)));
    }

    #[test]
    fn grid_examples() {
        let g = FiniteMetric::linf_grid(1, 1).unwrap();
        assert_eq!(g.len(), 3);
        let lo = g.grid_index(&[-1]).unwrap();
        let hi = g.grid_index(&[1]).unwrap();
        assert_eq!(g.dist(lo, hi), 2.0);
        let g2 = FiniteMetric::linf_grid(2, 2).unwrap();
        assert_eq!(g2.dist(g2.grid_index(&[0, 0]).unwrap(), g2.grid_index(&[1, 2]).unwrap()), 2.0);
        let g3 = FiniteMetric::linf_grid(1, 2).unwrap();
        assert_eq!(g3.len(), 9);
        assert_eq!(g3.diameter(), 2.0);
        for i in 0..9 {
            assert_eq!(g3.grid_index(&g3.grid_coordinates(i).unwrap()), Some(i));
        }
        assert!(matches!(FiniteMetric::linf_grid(5, 6), Err(MetricError::PointCap { .. })));
        // The implicit grid passes dense validation.
        let dense = FiniteMetric::from_flat(9, g3.to_matrix().unwrap()).unwrap();
        assert_eq!(dense.diameter(), 2.0);
    }

    #[test]
    fn uniform_and_path_metrics() {
        let u = FiniteMetric::uniform(3).unwrap();
        assert!((0..3).all(|i| (0..3).all(|j| u.dist(i, j) == if i == j { 0.0 } else { 1.0 })));
        assert_eq!(FiniteMetric::path_metric(&Graph::cycle(4)).unwrap().diameter(), 2.0);
        let split = Graph::path(2).disjoint_union(&Graph::path(2));
        assert_eq!(FiniteMetric::path_metric(&split), Err(MetricError::Disconnected));
    }

    #[test]
    fn text_round_trip() {
        let m = FiniteMetric::line(&[0.0, 0.1, 1.0 / 3.0, 7.25e-5 + 2.0]).unwrap();
        let text = m.to_text().unwrap();
        let back: FiniteMetric = text.parse().unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_text().unwrap(), text);
        assert!(matches!("2\n0 1\n".parse::<FiniteMetric>(), Err(MetricError::Parse(_))));
    }

    #[test]
    fn distinct_distances_merge_near_ties() {
        let m = FiniteMetric::line(&[0.0, 1.0, 2.0, 2.0 + 1e-14 + 1.0]).unwrap();
        let dd = m.distinct_distances(CLUSTER_REL_TOL);
        assert_eq!(dd.len(), 3);
        assert!(dd.windows(2).all(|w| w[0] < w[1]));
    }

    fn arb_metric() -> impl Strategy<Value = FiniteMetric> {
        // Shortest-path closure of random positive weights is always a metric.
        (2usize..7).prop_flat_map(|n| {
            proptest::collection::vec(0.01f64..100.0, n * n).prop_map(move |w| {
                let mut d = vec![0.0; n * n];
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            d[i * n + j] = w[i.min(j) * n + i.max(j)];
                        }
                    }
                }
                for via in 0..n {
                    for i in 0..n {
                        for j in 0..n {
                            let alt = d[i * n + via] + d[via * n + j];
                            if alt < d[i * n + j] {
                                d[i * n + j] = alt;
                            }
                        }
                    }
                }
                FiniteMetric::from_flat(n, d).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn snowflakes_stay_metric(m in arb_metric(), eps in 0.001f64..0.999) {
            let s = m.snowflake(eps).unwrap();
            prop_assert!(FiniteMetric::from_flat(s.len(), s.to_matrix().unwrap()).is_ok());
        }

        #[test]
        fn text_round_trip_is_exact(m in arb_metric()) {
            let back: FiniteMetric = m.to_text().unwrap().parse().unwrap();
            prop_assert_eq!(back, m);
        }
    }
}
