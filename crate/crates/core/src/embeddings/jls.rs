//! Random distance-to-set embeddings into `{0, …, Δ}^K` with the sup norm.
//!
//! With `m = ⌈log₂ n⌉ + 1`, `K = m·⌈(2/c₁)·n^{3/D}·ln n⌉` and `r = K/m`,
//! draw independent uniform subsets `A_k^i` of size `2^k` (capped at `n`)
//! for `k < m`, `i < r`, and map `v ↦ (dist(v, A_k^i))`. Every such map is
//! 1-Lipschitz; with good probability its distortion is at most `D`.

use rand::seq::index;

use super::{embedding_distortion, CoordinateMap, EmbeddingReport, EmbeddingsError};
use crate::graph::{multi_source_distances, DistanceTable, Graph};
use crate::rng::{Rng, SeedStream};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JlsParams {
    pub n: usize,
    pub distortion: f64,
    pub c1: f64,
    /// Number of subset scales, `⌈log₂ n⌉ + 1`.
    pub m: u32,
    /// Number of coordinates.
    pub k: u64,
    /// Subsets per scale, `K / m`.
    pub r: u64,
}

fn check(distortion: f64, c1: f64) -> Result<(), EmbeddingsError> {
    if !(distortion >= 1.0) {
        return Err(EmbeddingsError::InvalidDistortion(distortion));
    }
    if !(c1 > 0.0 && c1.is_finite()) {
        return Err(EmbeddingsError::InvalidC1(c1));
    }
    Ok(())
}

pub fn jls_params(n: usize, distortion: f64, c1: f64) -> Result<JlsParams, EmbeddingsError> {
    check(distortion, c1)?;
    let m = n.max(1).next_power_of_two().trailing_zeros() + 1;
    let nf = n as f64;
    let r = ((2.0 / c1) * nf.powf(3.0 / distortion) * nf.ln()).ceil().max(0.0) as u64;
    Ok(JlsParams { n, distortion, c1, m, k: u64::from(m) * r, r })
}

/// `⌊500 ln n⌋`, the default coordinate range.
pub fn default_delta(n: usize) -> u64 {
    (500.0 * (n as f64).ln()).floor().max(0.0) as u64
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniversalSize {
    pub params: JlsParams,
    pub delta: u64,
    /// `ln |{0, …, Δ}^K| = K·ln(Δ + 1)`.
    pub ln_size: f64,
}

pub fn universal_space_size(n: usize, delta: u64, distortion: f64, c1: f64) -> Result<UniversalSize, EmbeddingsError> {
    let params = jls_params(n, distortion, c1)?;
    Ok(UniversalSize { params, delta, ln_size: params.k as f64 * ((delta + 1) as f64).ln() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct JlsOutcome {
    pub params: JlsParams,
    pub delta: u64,
    /// Map with the smallest distortion seen (the accepted one on success).
    pub map: CoordinateMap,
    pub report: EmbeddingReport,
    pub attempts: u32,
    pub success: bool,
}

fn build(g: &Graph, params: &JlsParams, delta: u64, rng: &mut Rng) -> Result<CoordinateMap, EmbeddingsError> {
    let n = g.order();
    let dim = params.k as usize;
    let mut coords = vec![0i64; n * dim];
    let mut col = 0;
    for scale in 0..params.m {
        let size = (1usize << scale).min(n);
        for _ in 0..params.r {
            let set = index::sample(rng, n, size).into_vec();
            for (v, &dist) in multi_source_distances(g, &set).iter().enumerate() {
                let value = dist as i64;
                if value < 0 || value as u64 > delta {
                    return Err(EmbeddingsError::CoordinateOutOfRange { vertex: v, value, delta });
                }
                coords[v * dim + col] = value;
            }
            col += 1;
        }
    }
    let points = ((delta + 1) as f64).powf(params.k as f64);
    Ok(CoordinateMap::new(n, dim, coords, points))
}

/// Draws embeddings until one has distortion at most `D`, up to `max_attempts`.
///
/// Attempt `i` uses the `i`-th child stream of `seed`.
pub fn jls_embedding(
    g: &Graph,
    distortion: f64,
    c1: f64,
    delta: u64,
    seed: u64,
    max_attempts: u32,
) -> Result<JlsOutcome, EmbeddingsError> {
    if max_attempts == 0 {
        return Err(EmbeddingsError::ZeroRetries);
    }
    g.require_connected()?;
    let params = jls_params(g.order(), distortion, c1)?;
    let diameter = DistanceTable::new(g).diameter();
    if diameter as u64 > delta {
        return Err(EmbeddingsError::DiameterExceedsDelta { diameter, delta });
    }
    let stream = SeedStream::new(seed);
    let mut best: Option<(CoordinateMap, EmbeddingReport)> = None;
    for attempt in 1..=max_attempts {
        let map = build(g, &params, delta, &mut stream.rng(u64::from(attempt)))?;
        let report = embedding_distortion(g, &map)?;
        let success = report.distortion <= distortion;
        if success || best.as_ref().is_none_or(|(_, b)| report.distortion < b.distortion) {
            best = Some((map, report));
        }
        if success {
            let (map, report) = best.expect("just stored");
            return Ok(JlsOutcome { params, delta, map, report, attempts: attempt, success: true });
        }
    }
    let (map, report) = best.expect("at least one attempt");
    Ok(JlsOutcome { params, delta, map, report, attempts: max_attempts, success: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poincare::ImageDistances;

    #[test]
    fn parameter_examples() {
        let p = jls_params(16, 3.0, 1.0).unwrap();
        assert_eq!((p.m, p.r, p.k), (5, 89, 445));
        assert_eq!(jls_params(17, 3.0, 1.0).unwrap().m, 6);
        // Large D: n^{3/D} → 1.
        let far = jls_params(16, 1e9, 1.0).unwrap();
        assert_eq!(far.r, (2.0 * 16f64.ln()).ceil() as u64);
        assert!(matches!(jls_params(16, 0.5, 1.0), Err(EmbeddingsError::InvalidDistortion(_))));
        assert_eq!(default_delta(16), 1386);
    }

    #[test]
    fn size_scaling() {
        // Squaring n doubles ln n; with D large the log-size grows roughly fourfold.
        let a = universal_space_size(1 << 10, 100, 1e6, 1.0).unwrap();
        let b = universal_space_size(1 << 20, 100, 1e6, 1.0).unwrap();
        let ratio = b.ln_size / a.ln_size;
        assert!(ratio > 3.5 && ratio < 4.5, "{ratio}");
        let u = universal_space_size(16, 31, 3.0, 1.0).unwrap();
        assert!((u.ln_size - 445.0 * 32f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn maps_are_lipschitz_with_integer_range() {
        let g = Graph::cycle(16);
        let table = DistanceTable::new(&g);
        for seed in 0..5 {
            let out = jls_embedding(&g, 3.0, 1.0, 31, seed, 3).unwrap();
            assert!(out.report.lip <= 1.0);
            for v in 0..16 {
                assert!(out.map.coordinates(v).iter().all(|&x| (0..=8).contains(&x)));
                for u in 0..16 {
                    assert!(out.map.image_distance(v, u) <= table.get(v, u) as f64);
                }
            }
            assert_eq!(out.map.dim(), 445);
        }
    }

    #[test]
    fn deterministic_and_domain() {
        let g = Graph::cycle(16);
        assert_eq!(jls_embedding(&g, 3.0, 1.0, 31, 7, 5).unwrap(), jls_embedding(&g, 3.0, 1.0, 31, 7, 5).unwrap());
        assert!(matches!(jls_embedding(&g, 3.0, 1.0, 4, 7, 5), Err(EmbeddingsError::DiameterExceedsDelta { .. })));
        assert_eq!(jls_embedding(&g, 3.0, 1.0, 31, 7, 0), Err(EmbeddingsError::ZeroRetries));
    }
}
