//! Statistics of a concentrated map restricted to a random set of `k` vertices.

use rand::seq::index;
use rayon::prelude::*;

use super::ModelsError;
use crate::poincare::{empirical_average, empirical_quantile, ImageDistances};
use crate::rng::SeedStream;
use crate::stats::Frequency;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RestrictionMc {
    /// Whether `f` is `(5, 1, ε)`-concentrated, `ε ≤ 1/31` and `k ≥ 2/ε`.
    pub hypothesis_met: bool,
    pub ave: f64,
    pub quantile: f64,
    /// Trials in which at least `(1 − 2ε)·C(k, 2)` pairs have image distance `≥ ave/5`.
    pub frequency: Frequency,
    /// `1 − 15/(ε²k)`.
    pub bound: f64,
}

impl RestrictionMc {
    pub fn holds(&self) -> bool {
        self.frequency.value() >= self.bound
    }
}

/// Draws `trials` uniform random orderings and inspects the first `k` vertices.
pub fn restriction_concentration_mc(
    f: &impl ImageDistances,
    eps: f64,
    k: usize,
    trials: u64,
    seed: u64,
) -> Result<RestrictionMc, ModelsError> {
    let n = f.vertex_count();
    if !(eps > 0.0 && eps < 0.5) {
        return Err(ModelsError::InvalidParameter(format!("ε = {eps} must lie in (0, 1/2)")));
    }
    if k < 2 || k > n {
        return Err(ModelsError::InvalidParameter(format!("k = {k} must lie in 2..={n}")));
    }
    let ave = empirical_average(f, 1.0);
    let quantile = empirical_quantile(f, eps);
    let hypothesis_met = ave <= 5.0 * quantile && eps <= 1.0 / 31.0 && k as f64 >= 2.0 / eps;
    let threshold = ave / 5.0;
    let pairs = k * (k - 1) / 2;
    let needed = (1.0 - 2.0 * eps) * pairs as f64;
    let stream = SeedStream::new(seed);
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let chosen = index::sample(&mut stream.rng(t), n, k).into_vec();
            let mut good = 0usize;
            for (i, &a) in chosen.iter().enumerate() {
                for &b in &chosen[i + 1..] {
                    if f.image_distance(a, b) >= threshold {
                        good += 1;
                    }
                }
            }
            good as f64 >= needed
        })
        .count() as u64;
    let bound = 1.0 - 15.0 / (eps * eps * k as f64);
    Ok(RestrictionMc { hypothesis_met, ave, quantile, frequency: Frequency { hits, trials }, bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::FiniteMetric;
    use crate::poincare::VertexMap;
    use std::sync::Arc;

    #[test]
    fn constant_map_always_qualifies() {
        let m = Arc::new(FiniteMetric::uniform(4).unwrap());
        let f = VertexMap::constant(m, 200, 2).unwrap();
        let r = restriction_concentration_mc(&f, 1.0 / 31.0, 62, 50, 1).unwrap();
        assert_eq!(r.frequency.value(), 1.0);
        assert!(r.hypothesis_met && r.holds());
    }

    #[test]
    fn spread_map_on_uniform_metric() {
        let m = Arc::new(FiniteMetric::uniform(64).unwrap());
        let f = VertexMap::new(m, (0..2000).map(|v| v % 64).collect()).unwrap();
        let r = restriction_concentration_mc(&f, 1.0 / 31.0, 62, 300, 4).unwrap();
        assert!(r.hypothesis_met);
        assert_eq!(r.quantile, 1.0);
        assert!(r.holds());
        assert_eq!(r, restriction_concentration_mc(&f, 1.0 / 31.0, 62, 300, 4).unwrap());
    }

    #[test]
    fn reports_unmet_hypothesis() {
        // Few image points: the ε-quantile is 0 while the average is positive.
        let m = Arc::new(FiniteMetric::uniform(2).unwrap());
        let f = VertexMap::new(m, (0..100).map(|v| v % 2).collect()).unwrap();
        let r = restriction_concentration_mc(&f, 1.0 / 31.0, 62, 10, 4).unwrap();
        assert!(!r.hypothesis_met);
        assert!(restriction_concentration_mc(&f, 0.6, 62, 10, 4).is_err());
    }
}
