//! Bi-Lipschitz distortion of a map out of the shortest-path metric of a graph.

use rayon::prelude::*;

use super::EmbeddingsError;
use crate::graph::{DistanceTable, Graph};
use crate::poincare::{ImageDistances, PoincareError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddingReport {
    /// Largest image distance across an edge (the Lipschitz constant).
    pub lip: f64,
    /// Smallest `ρ(f(v), f(u)) / dist(v, u)` over distinct vertices.
    pub colip: f64,
    /// `lip / colip`, infinite when some pair collapses.
    pub distortion: f64,
    /// The optimal scale `s`, equal to `colip`.
    pub scale: f64,
}

impl EmbeddingReport {
    pub const CSV_HEADER: &'static str = "lip,colip,distortion,scale";

    pub fn csv_row(&self) -> String {
        format!("{},{},{},{}", self.lip, self.colip, self.distortion, self.scale)
    }
}

pub fn embedding_distortion(g: &Graph, f: &impl ImageDistances) -> Result<EmbeddingReport, EmbeddingsError> {
    let n = g.order();
    if f.vertex_count() != n {
        return Err(PoincareError::LengthMismatch { map: f.vertex_count(), graph: n }.into());
    }
    g.require_connected()?;
    let table = DistanceTable::new(g);
    let lip = g.edges().iter().map(|&(v, u)| f.image_distance(v, u)).fold(0.0, f64::max);
    let colip = (0..n)
        .into_par_iter()
        .map(|v| {
            let row = table.row(v);
            (v + 1..n).map(|u| f.image_distance(v, u) / row[u] as f64).fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min);
    let colip = if colip.is_finite() { colip } else { 0.0 };
    let distortion = if colip > 0.0 { lip / colip } else { f64::INFINITY };
    Ok(EmbeddingReport { lip, colip, distortion, scale: colip })
}
