//! Shortest-path distances, balls and spheres.
//!
//! Pairs in different components are at distance `n`, never infinity.

use std::collections::VecDeque;

use super::{Graph, GraphError};

/// BFS distances from `source`; unreachable vertices get `n`.
pub fn bfs_distances(g: &Graph, source: usize) -> Vec<usize> {
    assert!(source < g.order(), "source {source} out of range");
    multi_source_distances(g, &[source])
}

/// Distance from every vertex to the nearest member of `sources`.
pub fn multi_source_distances(g: &Graph, sources: &[usize]) -> Vec<usize> {
    let n = g.order();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    for &s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1;
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    for d in &mut dist {
        if *d == usize::MAX {
            *d = n;
        }
    }
    dist
}

fn set_distances(g: &Graph, set: &[usize]) -> Result<Vec<usize>, GraphError> {
    if set.is_empty() {
        return Err(GraphError::EmptyVertexSet);
    }
    if let Some(&v) = set.iter().find(|&&v| v >= g.order()) {
        return Err(GraphError::VertexOutOfRange { vertex: v, n: g.order() });
    }
    Ok(multi_source_distances(g, set))
}

/// `{v : dist(v, S) ≤ radius}`, sorted.
pub fn ball(g: &Graph, set: &[usize], radius: usize) -> Result<Vec<usize>, GraphError> {
    let dist = set_distances(g, set)?;
    Ok((0..g.order()).filter(|&v| dist[v] <= radius).collect())
}

/// `{v : dist(v, S) = radius}`, sorted.
pub fn sphere(g: &Graph, set: &[usize], radius: usize) -> Result<Vec<usize>, GraphError> {
    let dist = set_distances(g, set)?;
    Ok((0..g.order()).filter(|&v| dist[v] == radius).collect())
}

/// Vertices `v` whose radius-`3m` ball induces a tree.
pub fn tree_like_set(g: &Graph, m: usize) -> Vec<usize> {
    let n = g.order();
    let radius = 3 * m;
    let mut dist = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    for v in 0..n {
        dist[v] = 0;
        touched.push(v);
        queue.push_back(v);
        while let Some(x) = queue.pop_front() {
            if dist[x] == radius {
                continue;
            }
            for &w in g.neighbors(x) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[x] + 1;
                    touched.push(w);
                    queue.push_back(w);
                }
            }
        }
        // The ball induces a connected subgraph; it is a tree iff it has |B| − 1 edges.
        let twice_edges: usize = touched
            .iter()
            .map(|&x| g.neighbors(x).iter().filter(|&&w| dist[w] != usize::MAX).count())
            .sum();
        if twice_edges / 2 + 1 == touched.len() {
            out.push(v);
        }
        for &x in &touched {
            dist[x] = usize::MAX;
        }
        touched.clear();
    }
    out
}

/// All-pairs shortest-path distances, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    data: Vec<u32>,
}

impl DistanceTable {
    pub fn new(g: &Graph) -> Self {
        let n = g.order();
        let mut data = Vec::with_capacity(n * n);
        for s in 0..n {
            data.extend(bfs_distances(g, s).into_iter().map(|d| d as u32));
        }
        Self { n, data }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, v: usize, u: usize) -> usize {
        self.data[v * self.n + u] as usize
    }

    pub fn row(&self, v: usize) -> &[u32] {
        &self.data[v * self.n..(v + 1) * self.n]
    }

    /// Largest entry; equals `n` when the graph is disconnected.
    pub fn diameter(&self) -> usize {
        self.data.iter().copied().max().unwrap_or(0) as usize
    }

    /// Sum of `dist(v, u)` over ordered pairs.
    pub fn total(&self) -> u64 {
        self.data.iter().map(|&d| d as u64).sum()
    }
}
