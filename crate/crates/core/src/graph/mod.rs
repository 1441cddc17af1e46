//! Simple undirected graphs on vertices `0..n`.
//!
//! A [`Graph`] is immutable after construction. Edges are stored as sorted
//! `(u, v)` pairs with `u < v`; adjacency lists are sorted.

mod cheeger;
mod distance;
mod expansion;
mod random;
mod spectrum;

pub use cheeger::{cheeger_bounds, cheeger_exact, cheeger_exact_with_limit, CheegerValue, CHEEGER_EXACT_LIMIT};
pub use distance::{ball, bfs_distances, multi_source_distances, sphere, tree_like_set, DistanceTable};
pub use expansion::{expansion_holds, ExpansionReport, EXPANSION_EXACT_LIMIT};
pub use random::{random_regular, random_regular_with, RegularSampler};
pub use spectrum::{
    eigenvalues_jacobi, eigenvalues_tridiagonal, spectrum, spectrum_with, EigenMethod, Spectrum, JACOBI_MAX_ORDER,
};

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("vertex set must be nonempty")]
    EmptyVertexSet,

    #[error("graph is not regular")]
    NotRegular,

    #[error("graph is not connected")]
    Disconnected,

    #[error("exhaustive search over 2^{n} subsets exceeds the limit 2^{limit}; use cheeger_bounds instead")]
    CheegerLimit { n: usize, limit: usize },

    #[error("d*n must be even (n = {n}, d = {d})")]
    OddDegreeSum { n: usize, d: usize },

    #[error("invalid degree {d} for {n} vertices")]
    InvalidDegree { n: usize, d: usize },

    #[error("pairing model produced no simple graph in {attempts} attempts")]
    RejectionCapExceeded { attempts: u64 },

    #[error("malformed graph file: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicate edges and out-of-range vertices.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &list {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for nb in &mut adjacency {
            nb.sort_unstable();
        }
        Ok(Self { n, edges: list, adjacency })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, edges: Vec::new(), adjacency: vec![Vec::new(); n] }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// The common degree if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adjacency.first()?.len();
        self.adjacency.iter().all(|nb| nb.len() == d).then_some(d)
    }

    pub fn require_regular(&self) -> Result<usize, GraphError> {
        self.regular_degree().ok_or(GraphError::NotRegular)
    }

    /// Connected-component label of every vertex, labels in order of first appearance.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().iter().all(|&c| c == 0)
    }

    pub fn require_connected(&self) -> Result<(), GraphError> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(GraphError::Disconnected)
        }
    }

    /// Image of the graph under the relabeling `v ↦ perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal graph order");
        Graph::new(self.n, self.edges.iter().map(|&(a, b)| (perm[a], perm[b])))
            .expect("relabeling by a permutation preserves simplicity")
    }

    /// Spanning subgraph with the given edges removed.
    pub fn without_edges(&self, removed: &[(usize, usize)]) -> Graph {
        let mut drop: Vec<(usize, usize)> = removed.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        drop.sort_unstable();
        let kept = self.edges.iter().copied().filter(|e| drop.binary_search(e).is_err());
        Graph::new(self.n, kept).expect("subgraph of a simple graph is simple")
    }

    /// Adjacency as one bitmask per vertex; only for `n ≤ 64`.
    pub fn neighbor_masks(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask representation needs n ≤ 64");
        self.adjacency.iter().map(|nb| nb.iter().fold(0u64, |m, &w| m | (1 << w))).collect()
    }

    /// Edge set as a bitmask over the pairs `(u, v)`, `u < v`, in lexicographic order; `n ≤ 11`.
    pub fn edge_mask(&self) -> u64 {
        assert!(self.n <= 11, "edge mask needs n ≤ 11");
        self.edges.iter().fold(0u64, |m, &(a, b)| m | (1 << pair_index(self.n, a, b)))
    }

    // --- generators ---

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).expect("complete graph is simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::new(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).expect("K_{a,b} is simple")
    }

    /// The triangular prism `C_3 × K_2` generalised to `C_k × K_2`.
    pub fn prism(k: usize) -> Graph {
        assert!(k >= 3);
        let rungs = (0..k).map(|i| (i, i + k));
        let outer = (0..k).map(|i| (i, (i + 1) % k));
        let inner = (0..k).map(|i| (k + i, k + (i + 1) % k));
        Graph::new(2 * k, rungs.chain(outer).chain(inner)).expect("prism is simple")
    }

    pub fn hypercube(dim: u32) -> Graph {
        let n = 1usize << dim;
        Graph::new(n, (0..n).flat_map(|v| (0..dim).map(move |b| (v, v ^ (1 << b))).filter(|&(v, w)| v < w)))
            .expect("hypercube is simple")
    }

    pub fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).expect("Petersen graph is simple")
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let edges = self.edges.iter().copied().chain(other.edges.iter().map(|&(a, b)| (a + shift, b + shift)));
        Graph::new(self.n + other.n, edges).expect("disjoint union of simple graphs is simple")
    }

    // --- file format: "n m" then m lines "u v" ---

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(a, b) in &self.edges {
            out.push_str(&format!("{a} {b}\n"));
        }
        out
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| GraphError::Parse("missing header line".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines.by_ref().take(m) {
            edges.push(parse_pair(line)?);
        }
        if edges.len() != m {
            return Err(GraphError::Parse(format!("header announces {m} edges, found {}", edges.len())));
        }
        if let Some(extra) = lines.next() {
            return Err(GraphError::Parse(format!("unexpected trailing line {extra:?}")));
        }
        Graph::new(n, edges)
    }
}

fn parse_pair(line: &str) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace().map(|t| t.parse::<usize>());
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(GraphError::Parse(format!("expected two integers, got {line:?}"))),
    }
}

/// Index of the pair `(a, b)`, `a < b`, in the lexicographic list of pairs of `0..n`.
pub fn pair_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * (2 * n - a - 1) / 2 + (b - a - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert_eq!(Graph::new(3, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::new(3, [(0, 1), (1, 0)]), Err(GraphError::DuplicateEdge(0, 1)));
        assert_eq!(Graph::new(2, [(0, 2)]), Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 }));
    }

    #[test]
    fn degrees_match_adjacency() {
        let g = Graph::petersen();
        assert_eq!(g.regular_degree(), Some(3));
        assert_eq!(g.edge_count(), 15);
        for v in 0..10 {
            assert_eq!(g.degree(v), g.neighbors(v).len());
            for &w in g.neighbors(v) {
                assert!(g.has_edge(w, v));
            }
        }
        assert_eq!(Graph::prism(3).regular_degree(), Some(3));
        assert_eq!(Graph::hypercube(3).regular_degree(), Some(3));
        assert_eq!(Graph::complete_bipartite(3, 3).regular_degree(), Some(3));
        assert_eq!(Graph::path(3).regular_degree(), None);
    }

    #[test]
    fn components_and_connectivity() {
        let two = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert!(!two.is_connected());
        assert_eq!(two.components(), vec![0, 0, 0, 1, 1, 1]);
        assert!(Graph::cycle(5).is_connected());
        assert!(!Graph::empty(0).is_connected());
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let g = Graph::new(5, [(4, 3), (0, 2), (2, 1), (0, 1)]).unwrap();
        let text = g.to_text();
        assert_eq!(text, "5 4\n0 1\n0 2\n1 2\n3 4\n");
        let back: Graph = text.parse().unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn parse_errors_are_reported() {
        assert!(matches!("3 2\n0 1\n".parse::<Graph>(), Err(GraphError::Parse(_))));
        assert!(matches!("x".parse::<Graph>(), Err(GraphError::Parse(_))));
        assert!(matches!("2 1\n0 0\n".parse::<Graph>(), Err(GraphError::SelfLoop(0))));
    }

    #[test]
    fn pair_index_is_a_bijection() {
        let n = 7;
        let mut seen = vec![false; n * (n - 1) / 2];
        for a in 0..n {
            for b in a + 1..n {
                let i = pair_index(n, a, b);
                assert!(!seen[i]);
                seen[i] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn without_edges_removes_exactly_those() {
        let g = Graph::complete(4);
        let h = g.without_edges(&[(1, 0), (2, 3)]);
        assert_eq!(h.edges(), &[(0, 2), (0, 3), (1, 2), (1, 3)]);
    }
}
