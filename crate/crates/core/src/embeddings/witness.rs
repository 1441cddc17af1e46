//! The truncated-distance witness map.
//!
//! For a `d`-regular graph on `n` vertices and a target size `N`, vertex `v`
//! is sent to the point of `{−k, …, k}^s` whose `i`-th coordinate is
//! `trunc_k(dist(v, i) − r₀)` for the first `s₀` vertices `i` and `0` beyond.
//! Adjacent vertices land at sup-norm distance at most 1.

use super::{CoordinateMap, EmbeddingsError};
use crate::graph::{bfs_distances, Graph};
use crate::poincare::{gamma_of_map, GammaReport};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessParams {
    /// `ln N`; `N` itself may not fit in a float.
    pub ln_points: f64,
    pub n: usize,
    pub d: usize,
    /// `⌊ln ln N⌋`.
    pub k: u32,
    /// `⌊ln N / ln(2k + 1)⌋`.
    pub s: u32,
    /// `min{n, s}`.
    pub s0: usize,
    /// Largest `r` with `(d − 1)^r · s₀ ≤ n`, i.e. `⌊log_{d−1}(n / s₀)⌋`.
    pub r0: u32,
}

pub fn witness_params(n: usize, d: usize, ln_points: f64) -> Result<WitnessParams, EmbeddingsError> {
    if d < 3 {
        return Err(EmbeddingsError::DegreeTooSmall(d));
    }
    if !(ln_points > 1.0) || ln_points.ln().floor() < 1.0 {
        return Err(EmbeddingsError::TargetTooSmall(ln_points));
    }
    let k = ln_points.ln().floor() as u32;
    let s = (ln_points / f64::from(2 * k + 1).ln()).floor() as u32;
    let s0 = n.min(s as usize);
    let mut r0 = 0u32;
    let mut reach = s0 as u128;
    while reach * (d as u128 - 1) <= n as u128 {
        reach *= d as u128 - 1;
        r0 += 1;
    }
    Ok(WitnessParams { ln_points, n, d, k, s, s0, r0 })
}

/// The witness map of a connected `d`-regular graph.
pub fn witness_map(g: &Graph, ln_points: f64) -> Result<(CoordinateMap, WitnessParams), EmbeddingsError> {
    let d = g.require_regular()?;
    g.require_connected()?;
    let n = g.order();
    let params = witness_params(n, d, ln_points)?;
    let k = i64::from(params.k);
    let r0 = i64::from(params.r0);
    let mut coords = vec![0i64; n * params.s0];
    for i in 0..params.s0 {
        for (v, &dist) in bfs_distances(g, i).iter().enumerate() {
            coords[v * params.s0 + i] = (dist as i64 - r0).clamp(-k, k);
        }
    }
    Ok((CoordinateMap::new(n, params.s0, coords, ln_points.exp()), params))
}

/// Statistics of the witness map for `q = 1`; its ratio is a lower bound on `γ`.
pub fn witness_certificate(g: &Graph, ln_points: f64) -> Result<(GammaReport, WitnessParams), EmbeddingsError> {
    let (f, params) = witness_map(g, ln_points)?;
    Ok((gamma_of_map(g, &f, 1.0)?, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_regular;
    use crate::poincare::ImageDistances;

    #[test]
    fn params_examples() {
        let p = witness_params(4, 3, 1e9f64.ln()).unwrap();
        assert_eq!((p.k, p.s, p.s0, p.r0), (3, 10, 4, 0));
        let p = witness_params(1024, 3, 100.0 * 10f64.ln()).unwrap();
        assert_eq!((p.k, p.s, p.s0, p.r0), (5, 96, 96, 3));
        assert_eq!(witness_params(64, 3, 100.0 * 10f64.ln()).unwrap().r0, 0);
        assert!(matches!(witness_params(8, 2, 50.0), Err(EmbeddingsError::DegreeTooSmall(2))));
        assert!(matches!(witness_params(8, 3, 2.0), Err(EmbeddingsError::TargetTooSmall(_))));
    }

    #[test]
    fn seed_coordinate_is_clipped_shift() {
        let g = random_regular(64, 3, 4).unwrap();
        let (f, p) = witness_map(&g, 12.0).unwrap();
        // ln 12 → k = 2, s = ⌊12 / ln 5⌋ = 7, r₀ = ⌊log₂(64/7)⌋ = 3.
        assert_eq!((p.k, p.s, p.r0), (2, 7, 3));
        for i in 0..p.s0 {
            assert_eq!(f.coordinates(i)[i], -(i64::from(p.k).min(i64::from(p.r0))));
        }
    }

    #[test]
    fn edges_move_at_most_one() {
        for seed in 0..500u64 {
            let n = [8, 12, 20, 40][seed as usize % 4];
            let d = if seed % 3 == 0 { 4 } else { 3 };
            let g = random_regular(n, d, seed).unwrap();
            if !g.is_connected() {
                continue;
            }
            let (f, _) = witness_map(&g, 30.0 + seed as f64).unwrap();
            for &(v, u) in g.edges() {
                assert!(f.image_distance(v, u) <= 1.0);
            }
        }
    }

    #[test]
    fn certificate_on_k4() {
        let (r, _) = witness_certificate(&crate::graph::Graph::complete(4), 1e9f64.ln()).unwrap();
        assert!(r.dirichlet <= 1.0);
        let ratio = r.ratio.unwrap();
        assert!(ratio >= r.ave && ratio > 0.0 && ratio < 2.0);
    }
}
