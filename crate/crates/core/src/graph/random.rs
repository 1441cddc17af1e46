//! Uniform random d-regular graphs by the pairing model with rejection.

use rand::seq::SliceRandom;

use super::{Graph, GraphError};
use crate::rng::{Rng, SeedStream};

/// A configured sampler for simple d-regular graphs on `n` vertices.
#[derive(Debug, Clone, Copy)]
pub struct RegularSampler {
    n: usize,
    d: usize,
    max_attempts: u64,
}

impl RegularSampler {
    /// Validates `(n, d)` and sets the rejection cap to `10·e^{d²}`.
    pub fn new(n: usize, d: usize) -> Result<Self, GraphError> {
        if d == 0 || d >= n {
            return Err(GraphError::InvalidDegree { n, d });
        }
        if !(n * d).is_multiple_of(2) {
            return Err(GraphError::OddDegreeSum { n, d });
        }
        let cap = 10.0 * ((d * d) as f64).exp();
        let max_attempts = if cap >= u64::MAX as f64 { u64::MAX } else { cap.ceil() as u64 };
        Ok(Self { n, d, max_attempts })
    }

    pub fn with_max_attempts(mut self, max_attempts: u64) -> Self {
        self.max_attempts = max_attempts.max(1);
        self
    }

    pub fn max_attempts(&self) -> u64 {
        self.max_attempts
    }

    /// Draws one graph; every simple d-regular graph is equally likely.
    pub fn sample(&self, rng: &mut Rng) -> Result<Graph, GraphError> {
        let (n, d) = (self.n, self.d);
        let mut points: Vec<usize> = (0..n * d).map(|p| p / d).collect();
        let mut edges = Vec::with_capacity(n * d / 2);
        for _ in 0..self.max_attempts {
            points.shuffle(rng);
            edges.clear();
            let mut simple = true;
            for pair in points.chunks_exact(2) {
                let (a, b) = (pair[0], pair[1]);
                if a == b {
                    simple = false;
                    break;
                }
                edges.push((a.min(b), a.max(b)));
            }
            if !simple {
                continue;
            }
            edges.sort_unstable();
            if edges.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            return Ok(Graph::new(n, edges.iter().copied()).expect("checked simple"));
        }
        Err(GraphError::RejectionCapExceeded { attempts: self.max_attempts })
    }
}

/// A uniformly random simple d-regular graph on `n` vertices, determined by `seed`.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
    RegularSampler::new(n, d)?.sample(&mut SeedStream::new(seed).root_rng())
}

/// [`random_regular`] drawing from a caller-owned generator.
pub fn random_regular_with(n: usize, d: usize, rng: &mut Rng) -> Result<Graph, GraphError> {
    RegularSampler::new(n, d)?.sample(rng)
}
