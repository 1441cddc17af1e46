//! Small graphs and random metrics used by the verification suites.
//!
//! The "desk universe" is every connected cubic graph on 4, 6 and 8
//! vertices (1, 2 and 5 isomorphism classes) together with 20 seeded random
//! metrics, 10 on two points and 10 on three.

use std::sync::Arc;

use rand::Rng as _;

use crate::graph::Graph;
use crate::metric::FiniteMetric;
use crate::models::{canonical_key, ModelsError};
use crate::rng::{Rng, SeedStream};

/// Seed of the desk-universe metrics.
pub const DESK_SEED: u64 = 20_240_613;

/// Distances of random metrics are drawn log-uniformly from `[1, RANDOM_METRIC_SPREAD]`.
pub const RANDOM_METRIC_SPREAD: f64 = 10.0;

/// Every `d`-regular graph on the labelled vertex set `0..n`.
///
/// Each labelled graph is produced exactly once: the smallest vertex with a
/// missing edge is always completed next, choosing partners in increasing order.
pub fn labeled_regular_graphs(n: usize, d: usize) -> Vec<Graph> {
    enumerate_regular(n, d, false)
}

fn enumerate_regular(n: usize, d: usize, fix_first: bool) -> Vec<Graph> {
    if d >= n || (n * d) % 2 == 1 {
        return if d == 0 { vec![Graph::empty(n)] } else { Vec::new() };
    }
    let mut deficit = vec![d; n];
    let mut adj = vec![0u64; n];
    let mut edges = Vec::with_capacity(n * d / 2);
    if fix_first && d > 0 {
        for w in 1..=d {
            deficit[0] -= 1;
            deficit[w] -= 1;
            adj[0] |= 1 << w;
            adj[w] |= 1;
            edges.push((0, w));
        }
    }
    let mut out = Vec::new();
    fill(n, &mut deficit, &mut adj, &mut edges, None, &mut out);
    out
}

fn fill(
    n: usize,
    deficit: &mut [usize],
    adj: &mut [u64],
    edges: &mut Vec<(usize, usize)>,
    last: Option<(usize, usize)>,
    out: &mut Vec<Graph>,
) {
    let Some(v) = (0..n).find(|&v| deficit[v] > 0) else {
        out.push(Graph::new(n, edges.iter().copied()).expect("enumerated graphs are simple"));
        return;
    };
    let lower = match last {
        Some((lv, lw)) if lv == v => lw + 1,
        _ => v + 1,
    };
    // Not enough candidates left for v.
    if (lower..n).filter(|&w| deficit[w] > 0 && adj[v] >> w & 1 == 0).count() < deficit[v] {
        return;
    }
    for w in lower..n {
        if deficit[w] == 0 || adj[v] >> w & 1 == 1 {
            continue;
        }
        deficit[v] -= 1;
        deficit[w] -= 1;
        adj[v] |= 1 << w;
        adj[w] |= 1 << v;
        edges.push((v, w));
        fill(n, deficit, adj, edges, Some((v, w)), out);
        edges.pop();
        adj[v] &= !(1 << w);
        adj[w] &= !(1 << v);
        deficit[v] += 1;
        deficit[w] += 1;
    }
}

/// One canonical representative per isomorphism class of connected
/// `d`-regular graphs on `n ≤ 8` vertices, sorted by canonical key.
pub fn connected_regular_classes(n: usize, d: usize) -> Result<Vec<Graph>, ModelsError> {
    let mut reps: Vec<(u64, Graph)> = Vec::new();
    // Any such graph can be relabelled so that vertex 0 is adjacent to 1..=d.
    for g in enumerate_regular(n, d, true) {
        if !g.is_connected() {
            continue;
        }
        let key = canonical_key(&g)?;
        if let Err(pos) = reps.binary_search_by_key(&key, |(k, _)| *k) {
            reps.insert(pos, (key, crate::models::canonical_rep(&g)?));
        }
    }
    Ok(reps.into_iter().map(|(_, g)| g).collect())
}

/// The connected cubic graphs on `n ∈ {4, 6, 8}` vertices, named `cubic{n}-{i}`.
pub fn desk_graphs() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    for n in [4, 6, 8] {
        let classes = connected_regular_classes(n, 3).expect("n ≤ 8");
        out.extend(classes.into_iter().enumerate().map(|(i, g)| (format!("cubic{n}-{i}"), g)));
    }
    out
}

/// Named connected graphs of order at most 10.
pub fn small_connected_graphs() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for n in 2..=10 {
        out.push((format!("path{n}"), Graph::path(n)));
        out.push((format!("complete{n}"), Graph::complete(n)));
    }
    for n in 3..=10 {
        out.push((format!("cycle{n}"), Graph::cycle(n)));
    }
    for (a, b) in [(1, 3), (2, 2), (2, 3), (3, 3), (2, 5), (4, 4), (3, 7), (5, 5)] {
        out.push((format!("bipartite{a}x{b}"), Graph::complete_bipartite(a, b)));
    }
    for k in [3, 4, 5] {
        out.push((format!("prism{k}"), Graph::prism(k)));
    }
    out.push(("cube3".into(), Graph::hypercube(3)));
    out.push(("petersen".into(), Graph::petersen()));
    out.extend(desk_graphs());
    out
}

/// A metric on `points` points with pairwise distances drawn log-uniformly
/// from `[1, RANDOM_METRIC_SPREAD]`, redrawn until the triangle inequality holds.
pub fn random_metric(points: usize, rng: &mut Rng) -> FiniteMetric {
    let spread = RANDOM_METRIC_SPREAD.ln();
    loop {
        let mut data = vec![0.0; points * points];
        for i in 0..points {
            for j in i + 1..points {
                let x = rng.random_range(0.0..spread).exp();
                data[i * points + j] = x;
                data[j * points + i] = x;
            }
        }
        if let Ok(m) = FiniteMetric::from_flat(points, data) {
            return m;
        }
    }
}

/// `count` independent random metrics on `points` points.
pub fn random_metrics(count: usize, points: usize, seed: u64) -> Vec<FiniteMetric> {
    let stream = SeedStream::new(seed);
    (0..count).map(|i| random_metric(points, &mut stream.rng(i as u64))).collect()
}

/// Ten two-point and ten three-point metrics, named `m{N}-{i}`.
pub fn desk_metrics() -> Vec<(String, Arc<FiniteMetric>)> {
    let mut out = Vec::new();
    for points in [2, 3] {
        let metrics = random_metrics(10, points, SeedStream::new(DESK_SEED).child_seed(points as u64));
        out.extend(metrics.into_iter().enumerate().map(|(i, m)| (format!("m{points}-{i}"), Arc::new(m))));
    }
    out
}
