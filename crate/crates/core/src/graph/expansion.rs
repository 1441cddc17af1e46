//! Long-range expansion: `|B(S, ℓ)| ≥ min{3n/4, α(d−1)^ℓ |S|}` for all S and ℓ.

use rand::Rng as _;

use super::{Graph, GraphError};
use crate::rng::SeedStream;

/// Largest order checked over all subsets.
pub const EXPANSION_EXACT_LIMIT: usize = 18;

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionReport {
    pub holds: bool,
    /// True when every nonempty subset was checked.
    pub exhaustive: bool,
    /// First violating `(S, ℓ)` found.
    pub violation: Option<(Vec<usize>, usize)>,
    pub sets_checked: u64,
}

/// Checks the expansion property, exactly for `n ≤ 18` and otherwise on
/// all singletons plus `samples` random subsets drawn from `seed`.
pub fn expansion_holds(g: &Graph, alpha: f64, samples: usize, seed: u64) -> Result<ExpansionReport, GraphError> {
    let d = g.require_regular()?;
    let n = g.order();
    if n <= EXPANSION_EXACT_LIMIT {
        let masks = g.neighbor_masks();
        for set in 1u64..(1u64 << n) {
            if let Some(radius) = first_violation_mask(&masks, n, d, alpha, set) {
                return Ok(ExpansionReport {
                    holds: false,
                    exhaustive: true,
                    violation: Some(((0..n).filter(|&v| set >> v & 1 == 1).collect(), radius)),
                    sets_checked: set,
                });
            }
        }
        return Ok(ExpansionReport { holds: true, exhaustive: true, violation: None, sets_checked: (1u64 << n) - 1 });
    }

    let mut rng = SeedStream::new(seed).root_rng();
    let mut checked = 0u64;
    let singles = (0..n).map(|v| vec![v]);
    let randoms = (0..samples).map(|_| {
        let p = rng.random_range(0.0..0.5);
        let mut s: Vec<usize> = (0..n).filter(|_| rng.random_bool(p)).collect();
        if s.is_empty() {
            s.push(rng.random_range(0..n));
        }
        s
    });
    for set in singles.chain(randoms) {
        checked += 1;
        if let Some(radius) = first_violation(g, d, alpha, &set) {
            return Ok(ExpansionReport { holds: false, exhaustive: false, violation: Some((set, radius)), sets_checked: checked });
        }
    }
    Ok(ExpansionReport { holds: true, exhaustive: false, violation: None, sets_checked: checked })
}

fn required(n: usize, d: usize, alpha: f64, size: usize, radius: usize) -> f64 {
    let growth = alpha * ((d - 1) as f64).powi(radius.min(i32::MAX as usize) as i32) * size as f64;
    growth.min(0.75 * n as f64)
}

/// Radii are checked until both the ball and the right-hand side stop changing.
fn saturated(n: usize, d: usize, alpha: f64, size: usize, radius: usize) -> bool {
    d <= 2 || required(n, d, alpha, size, radius) >= 0.75 * n as f64
}

fn first_violation_mask(masks: &[u64], n: usize, d: usize, alpha: f64, set: u64) -> Option<usize> {
    let size = set.count_ones() as usize;
    let mut b = set;
    let mut radius = 0;
    loop {
        if (b.count_ones() as f64) < required(n, d, alpha, size, radius) {
            return Some(radius);
        }
        let mut next = b;
        let mut rest = b;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            next |= masks[v];
            rest &= rest - 1;
        }
        if next == b && saturated(n, d, alpha, size, radius) {
            return None;
        }
        b = next;
        radius += 1;
    }
}

fn first_violation(g: &Graph, d: usize, alpha: f64, set: &[usize]) -> Option<usize> {
    let n = g.order();
    let mut inside = vec![false; n];
    let mut frontier: Vec<usize> = Vec::new();
    for &v in set {
        if !inside[v] {
            inside[v] = true;
            frontier.push(v);
        }
    }
    let size = frontier.len();
    let mut ball = size;
    let mut radius = 0;
    loop {
        if (ball as f64) < required(n, d, alpha, size, radius) {
            return Some(radius);
        }
        let mut next = Vec::new();
        for &v in &frontier {
            for &w in g.neighbors(v) {
                if !inside[w] {
                    inside[w] = true;
                    next.push(w);
                }
            }
        }
        if next.is_empty() && saturated(n, d, alpha, size, radius) {
            return None;
        }
        ball += next.len();
        frontier = next;
        radius += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_regular;

    #[test]
    fn complete_graph_expands() {
        let r = expansion_holds(&Graph::complete(4), 1.0 / 3.0, 0, 0).unwrap();
        assert!(r.holds && r.exhaustive);
        assert_eq!(r.sets_checked, 15);
    }

    #[test]
    fn disconnected_graph_fails_for_large_radius() {
        let g = Graph::complete(4).disjoint_union(&Graph::complete(4));
        let r = expansion_holds(&g, 0.5, 0, 0).unwrap();
        let (set, radius) = r.violation.expect("a component cannot reach 3n/4");
        assert!(!r.holds);
        assert!(radius >= 1);
        assert!(crate::graph::ball(&g, &set, radius).unwrap().len() < 6);
    }

    #[test]
    fn cycle_pair_from_example() {
        // On C_8 with α = 1 the singleton {0} always satisfies the bound.
        let g = Graph::cycle(8);
        assert_eq!(first_violation(&g, 2, 1.0, &[0]), None);
        assert_eq!(crate::graph::ball(&g, &[0], 2).unwrap().len(), 5);
    }

    #[test]
    fn exact_and_sampled_agree_on_singletons() {
        let g = random_regular(16, 3, 4).unwrap();
        let masks = g.neighbor_masks();
        for v in 0..16 {
            for alpha in [0.1, 0.5, 1.0, 2.0] {
                assert_eq!(first_violation(&g, 3, alpha, &[v]), first_violation_mask(&masks, 16, 3, alpha, 1 << v));
            }
        }
    }

    #[test]
    fn sampled_mode_is_deterministic() {
        let g = random_regular(40, 3, 1).unwrap();
        let a = expansion_holds(&g, 0.05, 50, 9).unwrap();
        assert_eq!(a, expansion_holds(&g, 0.05, 50, 9).unwrap());
        assert!(!a.exhaustive);
    }
}
