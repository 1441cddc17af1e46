//! Goodness-of-fit and binomial helpers for the Monte Carlo checks.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Pearson's chi-square test of observed counts against expected probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

/// Tests `observed` against `probabilities` (which must sum to 1).
///
/// Cells with zero expected probability must have zero count; they are
/// ignored. Degrees of freedom are the number of remaining cells minus one.
pub fn chi_square(observed: &[u64], probabilities: &[f64]) -> ChiSquare {
    assert_eq!(observed.len(), probabilities.len(), "one probability per cell");
    let total: u64 = observed.iter().sum();
    let mut statistic = 0.0;
    let mut cells = 0usize;
    for (&o, &p) in observed.iter().zip(probabilities) {
        if p == 0.0 {
            if o > 0 {
                return ChiSquare { statistic: f64::INFINITY, dof: 0, p_value: 0.0 };
            }
            continue;
        }
        let e = p * total as f64;
        statistic += (o as f64 - e).powi(2) / e;
        cells += 1;
    }
    let dof = cells.saturating_sub(1);
    let p_value = if dof == 0 {
        1.0
    } else {
        ChiSquared::new(dof as f64).expect("positive degrees of freedom").sf(statistic)
    };
    ChiSquare { statistic, dof, p_value }
}

/// [`chi_square`] against the uniform law on `observed.len()` cells.
pub fn chi_square_uniform(observed: &[u64]) -> ChiSquare {
    let p = 1.0 / observed.len() as f64;
    chi_square(observed, &vec![p; observed.len()])
}

/// Standard deviation of a binomial proportion, `√(p(1−p)/trials)`.
pub fn binomial_sigma(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}

/// Empirical frequency with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequency {
    pub hits: u64,
    pub trials: u64,
}

impl Frequency {
    pub fn value(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.hits as f64 / self.trials as f64
        }
    }

    pub fn sigma(&self) -> f64 {
        binomial_sigma(self.value(), self.trials)
    }
}
