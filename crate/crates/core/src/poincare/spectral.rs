//! The squared-Euclidean constant and average distortion.

use super::{ImageDistances, PoincareError};
use crate::graph::{spectrum, DistanceTable, Graph};

/// `d / (2(d − λ₂))`, the constant for real-valued maps with squared cost.
///
/// Infinite for disconnected regular graphs (`λ₂ = d`).
pub fn gamma_euclidean_sq(g: &Graph) -> Result<f64, PoincareError> {
    let d = g.require_regular()? as f64;
    let gap = d - spectrum(g).lambda2();
    if gap <= 1e-9 {
        return Ok(f64::INFINITY);
    }
    Ok(d / (2.0 * gap))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AverageDistortion {
    /// `Σ_{v,u} ρ(f(v), f(u)) / Σ_{v,u} dist_G(v, u)`.
    pub ratio: f64,
    /// Largest image distance across an edge.
    pub lip: f64,
    /// `lip / ratio`, a lower bound on the distortion of `f`.
    pub distortion_lower_bound: f64,
}

pub fn average_distortion(g: &Graph, f: &impl ImageDistances) -> Result<AverageDistortion, PoincareError> {
    let n = g.order();
    if f.vertex_count() != n {
        return Err(PoincareError::LengthMismatch { map: f.vertex_count(), graph: n });
    }
    if !g.is_connected() {
        return Err(PoincareError::Disconnected);
    }
    let image: f64 = f.pair_histogram().iter().map(|&(d, c)| d * c as f64).sum();
    if image == 0.0 {
        return Err(PoincareError::ConstantMap);
    }
    let graph_total = DistanceTable::new(g).total() as f64;
    let ratio = image / graph_total;
    let lip = g.edges().iter().map(|&(v, u)| f.image_distance(v, u)).fold(0.0, f64::max);
    Ok(AverageDistortion { ratio, lip, distortion_lower_bound: lip / ratio })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::FiniteMetric;
    use crate::poincare::VertexMap;
    use std::sync::Arc;

    #[test]
    fn euclidean_examples() {
        for n in [4, 7] {
            let want = (n as f64 - 1.0) / (2.0 * n as f64);
            assert!((gamma_euclidean_sq(&Graph::complete(n)).unwrap() - want).abs() < 1e-9);
        }
        assert!((gamma_euclidean_sq(&Graph::cycle(4)).unwrap() - 0.5).abs() < 1e-9);
        assert!((gamma_euclidean_sq(&Graph::cycle(6)).unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(gamma_euclidean_sq(&Graph::path(3)), Err(PoincareError::Graph(crate::GraphError::NotRegular)));
    }

    #[test]
    fn average_distortion_examples() {
        let g = Graph::petersen();
        let m = Arc::new(FiniteMetric::path_metric(&g).unwrap());
        let id = VertexMap::new(m.clone(), (0..10).collect()).unwrap();
        let r = average_distortion(&g, &id).unwrap();
        assert_eq!((r.ratio, r.lip, r.distortion_lower_bound), (1.0, 1.0, 1.0));

        let c4 = Graph::cycle(4);
        let two = Arc::new(FiniteMetric::uniform(2).unwrap());
        let collapse = VertexMap::new(two.clone(), vec![0, 0, 0, 1]).unwrap();
        let r = average_distortion(&c4, &collapse).unwrap();
        assert_eq!(r.ratio, 6.0 / 16.0);
        assert_eq!(r.lip, 1.0);

        let doubled = Arc::new(two.scaled(2.0).unwrap());
        let r2 = average_distortion(&c4, &VertexMap::new(doubled, vec![0, 0, 0, 1]).unwrap()).unwrap();
        assert_eq!(r2.distortion_lower_bound, r.distortion_lower_bound);

        let constant = VertexMap::new(two, vec![1; 4]).unwrap();
        assert_eq!(average_distortion(&c4, &constant), Err(PoincareError::ConstantMap));
    }
}
