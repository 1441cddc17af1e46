//! Seed maps: each vertex points to the first seed at distance exactly `m`.
//!
//! [`seed_map_g`] uses the seeds `0..k` in natural order; [`seed_map_h`]
//! uses an arbitrary seed set `R` ordered by a permutation `α` of its
//! positions. A vertex with no seed at distance `m` is unassigned (`□`).

use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::ModelsError;
use crate::graph::{sphere, Graph};
use crate::rng::SeedStream;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedTable {
    m: usize,
    /// The seed set, sorted increasingly.
    seeds: Vec<usize>,
    /// `rank[i]` is the position of `seeds[i]` in the governing order.
    rank: Vec<usize>,
    assignment: Vec<Option<usize>>,
}

impl SeedTable {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn seeds(&self) -> &[usize] {
        &self.seeds
    }

    pub fn rank(&self) -> &[usize] {
        &self.rank
    }

    /// Seed of `v`, or `None` for `□`.
    pub fn get(&self, v: usize) -> Option<usize> {
        self.assignment[v]
    }

    pub fn assignment(&self) -> &[Option<usize>] {
        &self.assignment
    }

    /// Number of vertices assigned to each seed, indexed like [`Self::seeds`].
    pub fn fiber_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.seeds.len()];
        for s in self.assignment.iter().flatten() {
            sizes[self.seeds.binary_search(s).expect("assigned seeds belong to the seed set")] += 1;
        }
        sizes
    }

    /// Re-derives every entry from `sphere(v, m)`: assigned seeds sit at
    /// distance exactly `m` and are minimal in the order; `□` means no seed there.
    pub fn verify(&self, g: &Graph) -> bool {
        (0..g.order()).all(|v| {
            let ring = sphere(g, &[v], self.m).expect("non-empty source");
            let best = ring
                .iter()
                .filter_map(|w| self.seeds.binary_search(w).ok().map(|i| (self.rank[i], *w)))
                .min()
                .map(|(_, w)| w);
            best == self.assignment[v]
        })
    }
}

/// Dense ranks of `keys`: `out[i]` is the position of `i` after a stable sort by key.
pub fn order_from_keys(keys: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by_key(|&i| (keys[i], i));
    let mut rank = vec![0; keys.len()];
    for (pos, &i) in idx.iter().enumerate() {
        rank[i] = pos;
    }
    rank
}

fn build(g: &Graph, m: usize, seeds: Vec<usize>, rank: Vec<usize>) -> SeedTable {
    let n = g.order();
    let mut seed_rank: Vec<Option<usize>> = vec![None; n];
    for (i, &s) in seeds.iter().enumerate() {
        seed_rank[s] = Some(rank[i]);
    }
    let assignment = (0..n)
        .into_par_iter()
        .map_init(
            || (vec![u32::MAX; n], Vec::new(), Vec::new()),
            |(seen, frontier, next), v| {
                // Stamp the ball with the source so buffers are reused without clearing.
                let stamp = v as u32;
                seen[v] = stamp;
                frontier.clear();
                frontier.push(v);
                for _ in 0..m {
                    next.clear();
                    for &x in frontier.iter() {
                        for &w in g.neighbors(x) {
                            if seen[w] != stamp {
                                seen[w] = stamp;
                                next.push(w);
                            }
                        }
                    }
                    std::mem::swap(frontier, next);
                }
                frontier.iter().filter_map(|&w| seed_rank[w].map(|r| (r, w))).min().map(|(_, w)| w)
            },
        )
        .collect();
    SeedTable { m, seeds, rank, assignment }
}

/// Seeds `0..k` in natural order.
pub fn seed_map_g(g: &Graph, m: usize, k: usize) -> Result<SeedTable, ModelsError> {
    let n = g.order();
    if k == 0 || k > n {
        return Err(ModelsError::InvalidParameter(format!("seed count {k} must lie in 1..={n}")));
    }
    Ok(build(g, m, (0..k).collect(), (0..k).collect()))
}

/// Seeds `R` ordered by `α`: the `i`-th smallest element of `R` has position `alpha[i]`.
pub fn seed_map_h(g: &Graph, m: usize, r: &[usize], alpha: &[usize]) -> Result<SeedTable, ModelsError> {
    let n = g.order();
    let mut seeds = r.to_vec();
    seeds.sort_unstable();
    seeds.dedup();
    if seeds.is_empty() {
        return Err(ModelsError::EmptySeedSet);
    }
    if let Some(&vertex) = seeds.iter().find(|&&s| s >= n) {
        return Err(ModelsError::VertexOutOfRange { vertex, n });
    }
    let mut check = alpha.to_vec();
    check.sort_unstable();
    if alpha.len() != seeds.len() || check.iter().enumerate().any(|(i, &x)| i != x) {
        return Err(ModelsError::InvalidOrder { len: alpha.len(), expected: seeds.len() });
    }
    Ok(build(g, m, seeds, alpha.to_vec()))
}

fn normalized(mut pairs: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    for p in &mut pairs {
        *p = (p.0.min(p.1), p.0.max(p.1));
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// Whether a pair-set generator `L(U, π)` satisfies `L(U, π) = π(L(U, id))`
/// on `samples` random permutations.
pub fn check_invariance<F>(u: &Graph, generator: F, samples: usize, seed: u64) -> bool
where
    F: Fn(&Graph, &[usize]) -> Vec<(usize, usize)>,
{
    let n = u.order();
    let id: Vec<usize> = (0..n).collect();
    let base = generator(u, &id);
    let mut rng = SeedStream::new(seed).root_rng();
    let mut pi = id.clone();
    (0..samples).all(|_| {
        pi.shuffle(&mut rng);
        let moved: Vec<(usize, usize)> = base.iter().map(|&(a, b)| (pi[a], pi[b])).collect();
        normalized(generator(u, &pi)) == normalized(moved)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_regular;
    use crate::models::draw_model;
    use crate::stats::chi_square_uniform;

    #[test]
    fn path_example() {
        let g = Graph::path(5);
        let t = seed_map_g(&g, 2, 1).unwrap();
        assert_eq!(t.get(2), Some(0));
        assert_eq!(t.get(0), None);
        assert_eq!(t.get(4), None);
        assert!(t.verify(&g));
    }

    #[test]
    fn degenerate_radii() {
        let g = Graph::cycle(8);
        let far = seed_map_g(&g, 5, 8).unwrap();
        assert!(far.assignment().iter().all(Option::is_none));
        let near = seed_map_g(&g, 1, 8).unwrap();
        for v in 0..8 {
            assert_eq!(near.get(v), g.neighbors(v).iter().copied().min());
        }
        assert!(seed_map_g(&g, 1, 0).is_err());
    }

    #[test]
    fn natural_order_matches_seed_map_g() {
        let g = random_regular(60, 3, 2).unwrap();
        let a = seed_map_g(&g, 3, 20).unwrap();
        let b = seed_map_h(&g, 3, &(0..20).collect::<Vec<_>>(), &(0..20).collect::<Vec<_>>()).unwrap();
        assert_eq!(a, b);
        assert!(a.verify(&g));
    }

    #[test]
    fn reversed_order_picks_the_other_seed() {
        // On C_6, vertex 0 has 2 and 4 at distance 2.
        let g = Graph::cycle(6);
        let natural = seed_map_h(&g, 2, &[2, 4], &[0, 1]).unwrap();
        let reversed = seed_map_h(&g, 2, &[2, 4], &[1, 0]).unwrap();
        assert_eq!((natural.get(0), reversed.get(0)), (Some(2), Some(4)));
        assert!(matches!(seed_map_h(&g, 2, &[2, 4], &[0, 0]), Err(ModelsError::InvalidOrder { .. })));
        assert_eq!(seed_map_h(&g, 2, &[], &[]), Err(ModelsError::EmptySeedSet));
    }

    #[test]
    fn random_order_gives_uniform_seed() {
        // On C_12 with R = {3, 9}, vertex 0 reaches both at distance 3 and also 6 ∉ R.
        let g = Graph::cycle(12);
        let r = [3, 6, 9];
        let mut counts = [0u64; 2];
        let mut rng = SeedStream::new(8).root_rng();
        let mut alpha = vec![0, 1, 2];
        for _ in 0..100_000 {
            alpha.shuffle(&mut rng);
            match seed_map_h(&g, 3, &r, &alpha).unwrap().get(0) {
                Some(3) => counts[0] += 1,
                Some(9) => counts[1] += 1,
                other => panic!("unexpected seed {other:?}"),
            }
        }
        assert!(chi_square_uniform(&counts).p_value > 0.01, "{counts:?}");
    }

    #[test]
    fn seed_consistency_under_relabelling() {
        for seed in 0..20 {
            let n = [20, 50, 100][seed as usize % 3];
            let draw = draw_model(n, 3, 4, seed).unwrap();
            let (m, k) = (2, n / 4);
            let g_map = seed_map_g(&draw.h, m, k).unwrap();
            let inv = draw.pi_inverse();
            let mut r: Vec<usize> = (0..k).map(|x| inv[x]).collect();
            r.sort_unstable();
            let alpha = order_from_keys(&r.iter().map(|&x| draw.pi[x]).collect::<Vec<_>>());
            let h_map = seed_map_h(&draw.u, m, &r, &alpha).unwrap();
            for (v, &u) in inv.iter().enumerate().take(n) {
                assert_eq!(g_map.get(v), h_map.get(u).map(|s| draw.pi[s]));
            }
            assert!(g_map.verify(&draw.h) && h_map.verify(&draw.u));
        }
    }

    #[test]
    fn invariance_predicate() {
        let u = Graph::petersen();
        // Images of the edges of U are invariant; a fixed pair is not.
        assert!(check_invariance(&u, |g, pi| g.edges().iter().map(|&(a, b)| (pi[a], pi[b])).collect(), 20, 1));
        assert!(!check_invariance(&u, |_, _| vec![(0, 1)], 20, 1));
    }

    #[test]
    fn order_from_keys_ranks() {
        assert_eq!(order_from_keys(&[30, 10, 20]), vec![2, 0, 1]);
        assert_eq!(order_from_keys(&[]), Vec::<usize>::new());
    }
}
