//! Exhaustive maximisation of the per-map ratio over all `N^n` maps.
//!
//! Maps are enumerated as base-`N` counters with vertex 0 the most
//! significant digit, so enumeration order is lexicographic. The search is
//! split by a fixed-length prefix; each prefix block is scanned by one
//! worker and blocks are merged in order, which makes the reported witness
//! the lexicographically smallest maximiser regardless of thread count.

use std::sync::Arc;

use num_rational::Ratio;
use rayon::prelude::*;

use super::stats::ratio_of;
use super::{gamma_of_map, GammaReport, PoincareError, VertexMap};
use crate::graph::Graph;
use crate::metric::{CostMatrix, FiniteMetric};

/// Default limit on the number of maps examined.
pub const EXHAUSTIVE_CAP: f64 = 1e8;

/// Maximiser of `γ(G, ρ^q; f)` over all non-constant maps.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaExact {
    /// `γ(G, ρ^q)`, `+∞` when some map cuts no edge.
    pub value: f64,
    pub witness: VertexMap,
    pub report: GammaReport,
    pub maps_examined: u64,
}

pub fn gamma_exact(g: &Graph, m: &Arc<FiniteMetric>, q: f64) -> Result<GammaExact, PoincareError> {
    gamma_exact_with_cap(g, m, q, EXHAUSTIVE_CAP)
}

pub fn gamma_exact_with_cap(g: &Graph, m: &Arc<FiniteMetric>, q: f64, cap: f64) -> Result<GammaExact, PoincareError> {
    let n = g.order();
    let points = m.len();
    check_size(n, points, cap)?;
    let cost = CostMatrix::new(m, q)?;
    let prefix = prefix_len(n, points);
    let blocks = points.pow(prefix as u32);
    let found: Vec<Option<(f64, Vec<usize>)>> =
        (0..blocks).into_par_iter().map(|b| scan_block(g, &cost, prefix, b)).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    for candidate in found.into_iter().flatten() {
        if best.as_ref().is_none_or(|(r, _)| candidate.0 > *r) {
            best = Some(candidate);
        }
    }
    let (_, assignment) = best.ok_or(PoincareError::NoNonConstantMap)?;
    let witness = VertexMap::new(m.clone(), assignment)?;
    let report = gamma_of_map(g, &witness, q)?;
    let value = report.ratio.expect("witness is non-constant");
    Ok(GammaExact { value, witness, report, maps_examined: (points as u64).pow(n as u32) })
}

fn check_size(n: usize, points: usize, cap: f64) -> Result<(), PoincareError> {
    if n == 0 {
        return Err(PoincareError::EmptyGraph);
    }
    if n < 2 || points < 2 {
        return Err(PoincareError::NoNonConstantMap);
    }
    let maps = (points as f64).powi(n as i32);
    if maps > cap {
        return Err(PoincareError::ExhaustiveCap { maps, cap });
    }
    Ok(())
}

/// Shortest prefix giving at least 64 blocks.
fn prefix_len(n: usize, points: usize) -> usize {
    let mut p = 0;
    let mut blocks = 1usize;
    while p < n && blocks < 64 {
        p += 1;
        blocks *= points;
    }
    p
}

fn scan_block(g: &Graph, cost: &CostMatrix, prefix: usize, block: usize) -> Option<(f64, Vec<usize>)> {
    let n = g.order();
    let points = cost.len();
    let mut a = vec![0usize; n];
    let mut rest = block;
    for v in (0..prefix).rev() {
        a[v] = rest % points;
        rest /= points;
    }
    let mut counts = vec![0u64; points];
    for &x in &a {
        counts[x] += 1;
    }
    let n2 = (n * n) as f64;
    let edges = g.edge_count() as f64;
    let mut best: Option<(f64, Vec<usize>)> = None;
    loop {
        if counts.iter().all(|&c| c < n as u64) {
            let mut pair = 0.0;
            for x in 0..points {
                if counts[x] == 0 {
                    continue;
                }
                for y in x + 1..points {
                    pair += (counts[x] * counts[y]) as f64 * cost.get(x, y);
                }
            }
            let edge: f64 = g.edges().iter().map(|&(u, v)| cost.get(a[u], a[v])).sum();
            let ratio = ratio_of(2.0 * pair / n2, if edges > 0.0 { edge / edges } else { 0.0 });
            if let Some(r) = ratio {
                if best.as_ref().is_none_or(|(b, _)| r > *b) {
                    best = Some((r, a.clone()));
                }
            }
        }
        // Advance the suffix odometer, least significant digit last.
        let mut v = n;
        loop {
            if v == prefix {
                return best;
            }
            v -= 1;
            counts[a[v]] -= 1;
            a[v] += 1;
            if a[v] == points {
                a[v] = 0;
                counts[0] += 1;
            } else {
                counts[a[v]] += 1;
                break;
            }
        }
    }
}

/// Every map `[n] → [points]` in lexicographic order (vertex 0 most significant).
pub fn all_maps(n: usize, points: usize) -> AllMaps {
    AllMaps { current: (points > 0 || n == 0).then(|| vec![0; n]), points }
}

#[derive(Debug, Clone)]
pub struct AllMaps {
    current: Option<Vec<usize>>,
    points: usize,
}

impl Iterator for AllMaps {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        for v in (0..next.len()).rev() {
            next[v] += 1;
            if next[v] < self.points {
                self.current = Some(next);
                return Some(out);
            }
            next[v] = 0;
        }
        Some(out)
    }
}

/// Exact `γ(G, ρ^q)` as a fraction for integer-valued metrics and integer `q`.
///
/// Returns the value and the lexicographically smallest maximiser.
pub fn gamma_exact_rational(g: &Graph, m: &FiniteMetric, q: u32) -> Result<(Ratio<i128>, Vec<usize>), PoincareError> {
    let n = g.order();
    let points = m.len();
    check_size(n, points, EXHAUSTIVE_CAP)?;
    if !g.is_connected() {
        return Err(PoincareError::Disconnected);
    }
    let mut cost = vec![0i128; points * points];
    for x in 0..points {
        for y in 0..points {
            let d = m.dist(x, y);
            if d.fract() != 0.0 || d > 1e12 {
                return Err(PoincareError::NonIntegral { i: x, j: y });
            }
            cost[x * points + y] = (d as i128).pow(q);
        }
    }
    let edges = g.edge_count() as i128;
    let n2 = (n * n) as i128;
    let mut a = vec![0usize; n];
    let mut best: Option<(Ratio<i128>, Vec<usize>)> = None;
    loop {
        if a.iter().any(|&x| x != a[0]) {
            let mut pair = 0i128;
            for v in 0..n {
                for u in 0..n {
                    pair += cost[a[v] * points + a[u]];
                }
            }
            let edge: i128 = g.edges().iter().map(|&(u, v)| cost[a[u] * points + a[v]]).sum();
            let r = Ratio::new(pair * edges, n2 * edge);
            if best.as_ref().is_none_or(|(b, _)| r > *b) {
                best = Some((r, a.clone()));
            }
        }
        let mut v = n;
        loop {
            if v == 0 {
                return Ok(best.expect("n ≥ 2 and N ≥ 2 give a non-constant map"));
            }
            v -= 1;
            a[v] += 1;
            if a[v] == points {
                a[v] = 0;
            } else {
                break;
            }
        }
    }
}
