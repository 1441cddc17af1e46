//! Heuristic lower bounds on `γ(G, ρ^q)` by restarted hill climbing.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng as _;

use super::stats::ratio_of;
use super::{PoincareError, VertexMap};
use crate::graph::Graph;
use crate::metric::{CostMatrix, FiniteMetric};
use crate::rng::SeedStream;

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    /// Best ratio found; `None` if no non-constant map was evaluated.
    pub value: Option<f64>,
    pub best: VertexMap,
    pub evaluations: u64,
    pub restarts: u64,
}

/// Sums that determine the ratio of the current map.
struct State<'a> {
    g: &'a Graph,
    cost: &'a CostMatrix,
    a: Vec<usize>,
    counts: Vec<u64>,
    pair: f64,
    edge: f64,
}

impl<'a> State<'a> {
    fn new(g: &'a Graph, cost: &'a CostMatrix, a: Vec<usize>) -> Self {
        let mut counts = vec![0u64; cost.len()];
        for &x in &a {
            counts[x] += 1;
        }
        let mut s = Self { g, cost, a, counts, pair: 0.0, edge: 0.0 };
        s.recompute();
        s
    }

    fn recompute(&mut self) {
        let points = self.cost.len();
        let mut pair = 0.0;
        for x in 0..points {
            for y in 0..points {
                pair += (self.counts[x] * self.counts[y]) as f64 * self.cost.get(x, y);
            }
        }
        self.pair = pair;
        self.edge = self.g.edges().iter().map(|&(u, v)| self.cost.get(self.a[u], self.a[v])).sum();
    }

    fn ratio_with(&self, pair: f64, edge: f64) -> Option<f64> {
        let n = self.a.len() as f64;
        let m = self.g.edge_count() as f64;
        ratio_of(pair.max(0.0) / (n * n), if m > 0.0 { edge.max(0.0) / m } else { 0.0 })
    }

    fn ratio(&self) -> Option<f64> {
        self.ratio_with(self.pair, self.edge)
    }

    /// Ratio after moving `v` to point `b`, computed from the current sums.
    fn ratio_after(&self, v: usize, b: usize) -> Option<f64> {
        let a = self.a[v];
        let c = self.cost;
        let row: f64 = (0..c.len()).map(|y| self.counts[y] as f64 * (c.get(b, y) - c.get(a, y))).sum();
        let pair = self.pair + 2.0 * (row - c.get(b, a));
        let edge = self.edge + self.g.neighbors(v).iter().map(|&w| c.get(b, self.a[w]) - c.get(a, self.a[w])).sum::<f64>();
        // Moving onto an occupied point can make the map constant; sums would only be ~0.
        if self.counts[a] == 1 && self.counts[b] + 1 == self.a.len() as u64 {
            return None;
        }
        self.ratio_with(pair, edge)
    }

    fn apply(&mut self, v: usize, b: usize) {
        self.counts[self.a[v]] -= 1;
        self.counts[b] += 1;
        self.a[v] = b;
        self.recompute();
    }
}

fn improves(candidate: Option<f64>, current: Option<f64>) -> bool {
    match (candidate, current) {
        (Some(c), Some(r)) => c > r,
        (Some(_), None) => true,
        (None, _) => false,
    }
}

/// Random restarts plus first-improvement single-vertex moves.
///
/// The first start is the constant map to point 0; later starts are uniform
/// random maps. Each candidate ratio computed counts as one evaluation.
pub fn gamma_lower_search(
    g: &Graph,
    m: &Arc<FiniteMetric>,
    q: f64,
    iters: u64,
    seed: u64,
) -> Result<SearchResult, PoincareError> {
    if iters == 0 {
        return Err(PoincareError::ZeroIterations);
    }
    let n = g.order();
    let points = m.len();
    if n == 0 {
        return Err(PoincareError::EmptyGraph);
    }
    let cost = CostMatrix::new(m, q)?;
    let mut rng = SeedStream::new(seed).root_rng();
    let mut evaluations = 0u64;
    let mut restarts = 0u64;
    let mut best: (Option<f64>, Vec<usize>) = (None, vec![0; n]);
    let mut moves: Vec<(usize, usize)> = Vec::with_capacity(n * points);

    'restarts: while evaluations < iters {
        let start = if restarts == 0 { vec![0; n] } else { (0..n).map(|_| rng.random_range(0..points)).collect() };
        restarts += 1;
        let mut state = State::new(g, &cost, start);
        if restarts > 1 {
            evaluations += 1;
            if improves(state.ratio(), best.0) {
                best = (state.ratio(), state.a.clone());
            }
        }
        loop {
            moves.clear();
            moves.extend((0..n).flat_map(|v| (0..points).map(move |b| (v, b))).filter(|&(v, b)| state.a[v] != b));
            moves.shuffle(&mut rng);
            let current = state.ratio();
            let mut moved = false;
            for &(v, b) in &moves {
                if evaluations >= iters {
                    break 'restarts;
                }
                evaluations += 1;
                let candidate = state.ratio_after(v, b);
                if improves(candidate, current) {
                    state.apply(v, b);
                    if improves(state.ratio(), best.0) {
                        best = (state.ratio(), state.a.clone());
                    }
                    moved = true;
                    break;
                }
            }
            if !moved {
                break;
            }
        }
        if points < 2 {
            break;
        }
    }
    Ok(SearchResult { value: best.0, best: VertexMap::new(m.clone(), best.1)?, evaluations, restarts })
}
