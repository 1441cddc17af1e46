//! Joint draws of `(G, U, π, U₋ℓ, H, H₋ℓ)`.
//!
//! `G` is uniform among labelled `d`-regular graphs, `U` its canonical
//! representative, `U₋ℓ` is `U` minus `ℓ` uniformly chosen edges, `π` is a
//! uniform permutation and `H = π(U)`, `H₋ℓ = π(U₋ℓ)`. The pair `(H, H₋ℓ)`
//! then has the same law as `G` together with `ℓ` uniformly deleted edges.

use std::collections::HashMap;

use rand::seq::{index, SliceRandom};

use super::{canonical_key, CanonicalCache, ModelsError, CANONICAL_MAX_ORDER};
use crate::corpus::labeled_regular_graphs;
use crate::graph::{Graph, RegularSampler};
use crate::rng::{Rng, SeedStream};
use crate::stats::{chi_square_uniform, ChiSquare};

#[derive(Debug, Clone, PartialEq)]
pub struct ModelDraw {
    pub g: Graph,
    /// Canonical representative of `g`, or `g` itself when `canonical` is false.
    pub u: Graph,
    /// `π(v) = pi[v]`.
    pub pi: Vec<usize>,
    pub ell: usize,
    /// Deleted edges of `u`, sorted.
    pub deleted: Vec<(usize, usize)>,
    pub u_minus: Graph,
    pub h: Graph,
    pub h_minus: Graph,
    pub canonical: bool,
}

impl ModelDraw {
    /// `π⁻¹` as a table.
    pub fn pi_inverse(&self) -> Vec<usize> {
        let mut inv = vec![0; self.pi.len()];
        for (v, &p) in self.pi.iter().enumerate() {
            inv[p] = v;
        }
        inv
    }

    /// Checks every structural invariant of the draw.
    pub fn is_consistent(&self) -> bool {
        let d = self.g.regular_degree();
        let same_class = if self.canonical {
            matches!((canonical_key(&self.g), canonical_key(&self.u)), (Ok(a), Ok(b)) if a == b)
        } else {
            self.u == self.g
        };
        same_class
            && d.is_some()
            && self.h.regular_degree() == d
            && self.deleted.len() == self.ell
            && self.deleted.iter().all(|&(a, b)| self.u.has_edge(a, b))
            && self.u_minus == self.u.without_edges(&self.deleted)
            && self.h == self.u.relabel(&self.pi)
            && self.h_minus == self.u_minus.relabel(&self.pi)
            && self.h.edge_count() - self.h_minus.edge_count() == self.ell
    }
}

fn check_ell(n: usize, d: usize, ell: usize) -> Result<(), ModelsError> {
    let edges = n * d / 2;
    if ell > edges {
        return Err(ModelsError::InvalidDeletion { ell, edges });
    }
    Ok(())
}

fn delete_random(g: &Graph, ell: usize, rng: &mut Rng) -> Vec<(usize, usize)> {
    let mut picked: Vec<(usize, usize)> =
        index::sample(rng, g.edge_count(), ell).into_iter().map(|i| g.edges()[i]).collect();
    picked.sort_unstable();
    picked
}

/// One draw; `U` is the canonical representative when `cache` is given, else `G` itself.
pub fn draw_model_with(
    sampler: &RegularSampler,
    ell: usize,
    rng: &mut Rng,
    cache: Option<&mut CanonicalCache>,
) -> Result<ModelDraw, ModelsError> {
    let g = sampler.sample(rng)?;
    let n = g.order();
    check_ell(n, g.regular_degree().unwrap_or(0), ell)?;
    let canonical = cache.is_some();
    let u = match cache {
        Some(c) => c.get(&g)?,
        None => g.clone(),
    };
    let deleted = delete_random(&u, ell, rng);
    let u_minus = u.without_edges(&deleted);
    let mut pi: Vec<usize> = (0..n).collect();
    pi.shuffle(rng);
    let h = u.relabel(&pi);
    let h_minus = u_minus.relabel(&pi);
    Ok(ModelDraw { g, u, pi, ell, deleted, u_minus, h, h_minus, canonical })
}

/// One seeded draw. `U` is canonical for `n ≤ 8` and skipped (`U = G`) above that.
pub fn draw_model(n: usize, d: usize, ell: usize, seed: u64) -> Result<ModelDraw, ModelsError> {
    check_ell(n, d, ell)?;
    let sampler = RegularSampler::new(n, d)?;
    let mut rng = SeedStream::new(seed).root_rng();
    let mut cache = (n <= CANONICAL_MAX_ORDER).then(CanonicalCache::new);
    draw_model_with(&sampler, ell, &mut rng, cache.as_mut())
}

/// `G` and the edges deleted from it, sampled directly.
pub fn draw_direct(sampler: &RegularSampler, ell: usize, rng: &mut Rng) -> Result<(Graph, Vec<(usize, usize)>), ModelsError> {
    let g = sampler.sample(rng)?;
    check_ell(g.order(), g.regular_degree().unwrap_or(0), ell)?;
    let deleted = delete_random(&g, ell, rng);
    Ok((g, deleted))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributionTest {
    pub n: usize,
    pub d: usize,
    pub ell: usize,
    pub draws: u64,
    /// Number of `(graph, deleted set)` outcomes.
    pub outcomes: usize,
    pub chi_square: ChiSquare,
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Rank of a sorted `k`-subset of `0..` in the combinatorial number system.
fn subset_rank(positions: &[usize]) -> usize {
    positions.iter().enumerate().map(|(i, &c)| binomial(c, i + 1)).sum()
}

/// Chi-square test of the law of `(H, H₋ℓ)` against the uniform law on all
/// pairs (labelled `d`-regular graph, `ℓ`-subset of its edges).
pub fn model_distribution_test(n: usize, d: usize, ell: usize, draws: u64, seed: u64) -> Result<DistributionTest, ModelsError> {
    if n > CANONICAL_MAX_ORDER {
        return Err(ModelsError::CanonicalCap { n, cap: CANONICAL_MAX_ORDER });
    }
    check_ell(n, d, ell)?;
    let sampler = RegularSampler::new(n, d)?;
    let graphs = labeled_regular_graphs(n, d);
    let index_of: HashMap<u64, usize> = graphs.iter().enumerate().map(|(i, g)| (g.edge_mask(), i)).collect();
    let per_graph = binomial(n * d / 2, ell);
    let mut counts = vec![0u64; graphs.len() * per_graph];
    let mut rng = SeedStream::new(seed).root_rng();
    let mut cache = CanonicalCache::new();
    for _ in 0..draws {
        let draw = draw_model_with(&sampler, ell, &mut rng, Some(&mut cache))?;
        let gi = index_of[&draw.h.edge_mask()];
        let mut positions: Vec<usize> = draw
            .deleted
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (draw.pi[a], draw.pi[b]);
                draw.h.edges().binary_search(&(x.min(y), x.max(y))).expect("deleted edge is an edge of H")
            })
            .collect();
        positions.sort_unstable();
        counts[gi * per_graph + subset_rank(&positions)] += 1;
    }
    Ok(DistributionTest { n, d, ell, draws, outcomes: counts.len(), chi_square: chi_square_uniform(&counts) })
}
