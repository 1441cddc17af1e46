//! Uniform random perfect matchings and how often they avoid a dense pair set.

use rand::Rng as _;
use rayon::prelude::*;

use super::ModelsError;
use crate::rng::{Rng, SeedStream};
use crate::stats::Frequency;

fn check_even(len: usize) -> Result<(), ModelsError> {
    if len == 0 || len % 2 == 1 {
        return Err(ModelsError::OddSet(len));
    }
    Ok(())
}

/// Pairs the least unmatched element with a uniform partner until nothing is left.
pub fn random_perfect_matching(x: &[usize], rng: &mut Rng) -> Result<Vec<(usize, usize)>, ModelsError> {
    check_even(x.len())?;
    let mut rest = x.to_vec();
    rest.sort_unstable();
    let mut out = Vec::with_capacity(rest.len() / 2);
    while !rest.is_empty() {
        let a = rest.remove(0);
        let b = rest.remove(rng.random_range(0..rest.len()));
        out.push((a, b));
    }
    Ok(out)
}

/// Every perfect matching of `x`, each as a sorted list of sorted pairs.
pub fn perfect_matchings(x: &[usize]) -> Result<Vec<Vec<(usize, usize)>>, ModelsError> {
    check_even(x.len())?;
    let mut rest = x.to_vec();
    rest.sort_unstable();
    let mut out = Vec::new();
    extend(&rest, &mut Vec::new(), &mut out);
    Ok(out)
}

fn extend(rest: &[usize], current: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    if rest.is_empty() {
        out.push(current.clone());
        return;
    }
    for j in 1..rest.len() {
        current.push((rest[0], rest[j]));
        let remaining: Vec<usize> = rest[1..].iter().enumerate().filter(|&(i, _)| i + 1 != j).map(|(_, &v)| v).collect();
        extend(&remaining, current, out);
        current.pop();
    }
}

/// `exp(−((1−2c)/4)·ln((1−2c)/(16eε))·ℓ)`.
pub fn matching_avoidance_bound(ell: usize, c: f64, eps: f64) -> f64 {
    let a = 1.0 - 2.0 * c;
    (-(a / 4.0) * (a / (16.0 * std::f64::consts::E * eps)).ln() * ell as f64).exp()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchingMc {
    /// Trials with `|μ ∩ Y| ≤ c·ℓ/2`.
    pub frequency: Frequency,
    pub bound: f64,
    pub threshold: f64,
}

impl MatchingMc {
    /// Whether the empirical probability is within three standard errors of the bound.
    pub fn consistent(&self) -> bool {
        self.frequency.value() <= self.bound + 3.0 * self.frequency.sigma()
    }
}

/// Estimates `P[|μ ∩ Y| ≤ c·ℓ/2]` for a uniform perfect matching `μ` of `0..ℓ`.
pub fn matching_avoidance_mc(
    ell: usize,
    y: &[(usize, usize)],
    c: f64,
    eps: f64,
    trials: u64,
    seed: u64,
) -> Result<MatchingMc, ModelsError> {
    check_even(ell)?;
    if !(c > 0.0 && c <= eps && eps <= 0.5) {
        return Err(ModelsError::InvalidParameter(format!("need 0 < c ≤ ε ≤ 1/2 (c = {c}, ε = {eps})")));
    }
    let mut inside = vec![false; ell * ell];
    for &(a, b) in y {
        if a >= ell || b >= ell || a == b {
            return Err(ModelsError::InvalidParameter(format!("pair ({a}, {b}) is not a pair of 0..{ell}")));
        }
        inside[a * ell + b] = true;
        inside[b * ell + a] = true;
    }
    let size = inside.iter().filter(|&&x| x).count() / 2;
    let all = ell * (ell - 1) / 2;
    if (size as f64) < (1.0 - eps) * all as f64 {
        return Err(ModelsError::InvalidParameter(format!("|Y| = {size} is below (1 − ε)·{all}")));
    }
    let threshold = c * ell as f64 / 2.0;
    let points: Vec<usize> = (0..ell).collect();
    let stream = SeedStream::new(seed);
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let mu = random_perfect_matching(&points, &mut stream.rng(t)).expect("even set");
            let overlap = mu.iter().filter(|&&(a, b)| inside[a * ell + b]).count();
            overlap as f64 <= threshold
        })
        .count() as u64;
    Ok(MatchingMc { frequency: Frequency { hits, trials }, bound: matching_avoidance_bound(ell, c, eps), threshold })
}
