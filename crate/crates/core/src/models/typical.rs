//! Vertices that lost an edge and still see a seed, and the diagnostic
//! experiment measuring how large those sets are.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};

use super::{draw_model_with, seed_map_h, ModelDraw, ModelsError};
use crate::graph::RegularSampler;
use crate::rng::SeedStream;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypicalSets {
    /// Degree `d − 1` in `U₋ℓ` and a seed at distance `m` in `U₋ℓ`.
    pub v: Vec<usize>,
    /// Members of `v` whose seed is the same in `U` and whose pair with it avoids `J`.
    pub v_prime: Vec<usize>,
    /// Members of `v` sharing their `U`-seed with at most `(d−1)^m / m` members of `v`.
    pub v_double: Vec<usize>,
}

/// The three sets for one draw, seeds `R` ordered by `α` and excluded pairs `J`.
///
/// Unassigned (`□`) counts as a value when grouping vertices by their `U`-seed.
pub fn typical_vertex_sets(
    draw: &ModelDraw,
    m: usize,
    r: &[usize],
    alpha: &[usize],
    j: &[(usize, usize)],
) -> Result<TypicalSets, ModelsError> {
    let d = draw.u.regular_degree().ok_or(crate::graph::GraphError::NotRegular)?;
    let h_minus = seed_map_h(&draw.u_minus, m, r, alpha)?;
    let h_full = seed_map_h(&draw.u, m, r, alpha)?;
    let excluded: HashSet<(usize, usize)> = j.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let v: Vec<usize> = (0..draw.u.order())
        .filter(|&x| draw.u_minus.degree(x) + 1 == d && h_minus.get(x).is_some())
        .collect();
    let v_prime = v
        .iter()
        .copied()
        .filter(|&x| {
            let s = h_full.get(x);
            s == h_minus.get(x) && s.is_some_and(|s| !excluded.contains(&(x.min(s), x.max(s))))
        })
        .collect();
    let cap = ((d - 1) as f64).powi(m as i32) / m.max(1) as f64;
    let mut fiber: std::collections::HashMap<Option<usize>, usize> = std::collections::HashMap::new();
    for &x in &v {
        *fiber.entry(h_full.get(x)).or_default() += 1;
    }
    let v_double = v.iter().copied().filter(|&x| fiber[&h_full.get(x)] as f64 <= cap).collect();
    Ok(TypicalSets { v, v_prime, v_double })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypicalDiagnostic {
    pub n: usize,
    pub d: usize,
    pub k_const: f64,
    pub m: usize,
    /// `⌊dn/(Km)⌋`.
    pub ell0: usize,
    /// `⌊Kn/(d−1)^m⌋`, capped at `n`.
    pub k0: usize,
    pub k0_capped: bool,
    pub trials: u64,
    /// Per-trial `(|V|, |V′|, |V″|)`.
    pub sizes: Vec<(usize, usize, usize)>,
    /// Frequencies of the three size events.
    pub f1: f64,
    pub f2: f64,
    pub f3: f64,
    /// Frequency of all three at once.
    pub all: f64,
    /// `1 − 2/K^{1/4} − 3e^{−√n}`, for comparison only.
    pub reference: f64,
}

/// Repeats [`typical_vertex_sets`] with `ℓ₀` deletions, a uniform `k₀`-set of
/// seeds in uniform order and `J = E(U)`.
pub fn typical_diagnostic(n: usize, d: usize, k_const: f64, m: usize, trials: u64, seed: u64) -> Result<TypicalDiagnostic, ModelsError> {
    if !(k_const >= 1.0) || m == 0 {
        return Err(ModelsError::InvalidParameter(format!("need K ≥ 1 and m ≥ 1 (K = {k_const}, m = {m})")));
    }
    let ell0 = ((d * n) as f64 / (k_const * m as f64)).floor() as usize;
    let k0_raw = (k_const * n as f64 / ((d - 1) as f64).powi(m as i32)).floor() as usize;
    let k0 = k0_raw.clamp(1, n);
    let sampler = RegularSampler::new(n, d)?;
    let stream = SeedStream::new(seed);
    let kf = k_const;
    let mut sizes = Vec::with_capacity(trials as usize);
    let (mut f1, mut f2, mut f3, mut all) = (0u64, 0u64, 0u64, 0u64);
    for t in 0..trials {
        let mut rng = stream.rng(t);
        let draw = draw_model_with(&sampler, ell0, &mut rng, None)?;
        let r = index::sample(&mut rng, n, k0).into_vec();
        let mut alpha: Vec<usize> = (0..k0).collect();
        alpha.shuffle(&mut rng);
        let sets = typical_vertex_sets(&draw, m, &r, &alpha, draw.u.edges())?;
        let (a, b, c) = (sets.v.len() as f64, sets.v_prime.len() as f64, sets.v_double.len() as f64);
        let e1 = a >= 2.0 * ell0 as f64 * (1.0 - 5.0 / kf.powf(0.25));
        let e2 = b >= (d - 1) as f64 / d as f64 * (1.0 - 1.0 / kf.powf(1.0 / 7.0)) * a;
        let e3 = c >= (1.0 - 2.0 / kf.powf(1.0 / 3.0)) * a;
        f1 += u64::from(e1);
        f2 += u64::from(e2);
        f3 += u64::from(e3);
        all += u64::from(e1 && e2 && e3);
        sizes.push((sets.v.len(), sets.v_prime.len(), sets.v_double.len()));
    }
    let freq = |x: u64| if trials == 0 { 0.0 } else { x as f64 / trials as f64 };
    Ok(TypicalDiagnostic {
        n,
        d,
        k_const,
        m,
        ell0,
        k0,
        k0_capped: k0 != k0_raw,
        trials,
        sizes,
        f1: freq(f1),
        f2: freq(f2),
        f3: freq(f3),
        all: freq(all),
        reference: 1.0 - 2.0 / kf.powf(0.25) - 3.0 * (-(n as f64).sqrt()).exp(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::draw_model;

    #[test]
    fn nothing_deleted() {
        let draw = draw_model(30, 3, 0, 2).unwrap();
        let r: Vec<usize> = (0..10).collect();
        let alpha: Vec<usize> = (0..10).collect();
        let sets = typical_vertex_sets(&draw, 2, &r, &alpha, &[]).unwrap();
        assert!(sets.v.is_empty() && sets.v_prime.is_empty() && sets.v_double.is_empty());
    }

    #[test]
    fn sets_are_nested_and_j_excludes() {
        let draw = draw_model(60, 3, 10, 5).unwrap();
        let r: Vec<usize> = (0..30).collect();
        let alpha: Vec<usize> = (0..30).rev().collect();
        let sets = typical_vertex_sets(&draw, 2, &r, &alpha, &[]).unwrap();
        assert!(!sets.v.is_empty() && sets.v.len() <= 20);
        assert!(sets.v_prime.iter().all(|x| sets.v.contains(x)));
        assert!(sets.v_double.iter().all(|x| sets.v.contains(x)));
        let every_pair: Vec<(usize, usize)> = (0..60).flat_map(|a| (a + 1..60).map(move |b| (a, b))).collect();
        let blocked = typical_vertex_sets(&draw, 2, &r, &alpha, &every_pair).unwrap();
        assert!(blocked.v_prime.is_empty());
        assert_eq!(blocked.v, sets.v);
    }

    #[test]
    fn small_diagnostic_runs() {
        let diag = typical_diagnostic(200, 3, 20.0, 2, 4, 9).unwrap();
        assert_eq!(diag.ell0, 15);
        assert_eq!(diag.k0, 200);
        assert!(diag.k0_capped);
        assert_eq!(diag.sizes.len(), 4);
        assert!(diag.sizes.iter().all(|&(a, b, c)| b <= a && c <= a && a <= 2 * diag.ell0));
    }
}
