//! Powered distances `ρ^q`, which are generally not metrics for `q > 1`.

use super::{FiniteMetric, MetricError, DENSE_POINT_LIMIT};

/// `x^q`, exact for small integer exponents.
#[inline]
pub fn power_cost(x: f64, q: f64) -> f64 {
    if q == 1.0 {
        x
    } else if q == 2.0 {
        x * x
    } else if q.fract() == 0.0 && (0.0..=32.0).contains(&q) {
        x.powi(q as i32)
    } else {
        x.powf(q)
    }
}

/// The symmetric matrix of `ρ(i, j)^q`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    q: f64,
    n: usize,
    data: Vec<f64>,
}

impl CostMatrix {
    pub fn new(metric: &FiniteMetric, q: f64) -> Result<Self, MetricError> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(MetricError::InvalidExponent(q));
        }
        let n = metric.len();
        if n > DENSE_POINT_LIMIT {
            return Err(MetricError::TooLargeToMaterialize(n));
        }
        let data = (0..n * n).map(|i| power_cost(metric.dist(i / n, i % n), q)).collect();
        Ok(Self { q, n, data })
    }

    pub fn exponent(&self) -> f64 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}
