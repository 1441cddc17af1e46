//! A canonical labelling by brute force over all vertex permutations.
//!
//! Among all relabellings of `g` the one with the lexicographically smallest
//! sorted edge list is chosen. For edge sets of equal size that list order
//! coincides with comparing edge bitmasks whose most significant bit is the
//! first pair `(0, 1)`, so the search maximises that reversed mask.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::ModelsError;
use crate::graph::{pair_index, Graph};

/// Largest order accepted by [`canonical_rep`].
pub const CANONICAL_MAX_ORDER: usize = 8;

/// All permutations of `0..n`, flattened.
fn permutations(n: usize) -> &'static [u8] {
    static TABLES: [OnceLock<Vec<u8>>; CANONICAL_MAX_ORDER + 1] = [const { OnceLock::new() }; CANONICAL_MAX_ORDER + 1];
    TABLES[n].get_or_init(|| {
        let mut out = Vec::new();
        let mut perm: Vec<u8> = (0..n as u8).collect();
        loop {
            out.extend_from_slice(&perm);
            // Next permutation in lexicographic order.
            let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("successor exists");
            perm.swap(i - 1, j);
            perm[i..].reverse();
        }
    })
}

/// Bit of pair `(a, b)` in the reversed mask, indexed `[a * n + b]`.
fn reversed_bits(n: usize) -> Vec<u64> {
    let pairs = n * (n - 1) / 2;
    let mut bits = vec![0u64; n * n];
    for a in 0..n {
        for b in a + 1..n {
            let bit = 1u64 << (pairs - 1 - pair_index(n, a, b));
            bits[a * n + b] = bit;
            bits[b * n + a] = bit;
        }
    }
    bits
}

fn check_order(n: usize) -> Result<(), ModelsError> {
    if n > CANONICAL_MAX_ORDER {
        return Err(ModelsError::CanonicalCap { n, cap: CANONICAL_MAX_ORDER });
    }
    Ok(())
}

/// The canonical form as a reversed pair mask; equal iff the graphs are isomorphic.
pub fn canonical_key(g: &Graph) -> Result<u64, ModelsError> {
    let n = g.order();
    check_order(n)?;
    if n < 2 {
        return Ok(0);
    }
    let bits = reversed_bits(n);
    let edges: Vec<(usize, usize)> = g.edges().to_vec();
    let mut best = 0u64;
    for perm in permutations(n).chunks_exact(n) {
        let mask = edges.iter().fold(0u64, |m, &(a, b)| m | bits[perm[a] as usize * n + perm[b] as usize]);
        best = best.max(mask);
    }
    Ok(best)
}

fn graph_from_key(n: usize, key: u64) -> Graph {
    let pairs = n * (n.max(1) - 1) / 2;
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if key >> (pairs - 1 - pair_index(n, a, b)) & 1 == 1 {
                edges.push((a, b));
            }
        }
    }
    Graph::new(n, edges).expect("key encodes a simple graph")
}

/// The isomorphic copy of `g` with the lexicographically smallest sorted edge list.
pub fn canonical_rep(g: &Graph) -> Result<Graph, ModelsError> {
    Ok(graph_from_key(g.order(), canonical_key(g)?))
}

/// Memoised [`canonical_rep`] keyed by the labelled edge set.
#[derive(Debug, Default, Clone)]
pub struct CanonicalCache {
    map: HashMap<(usize, u64), Graph>,
}

impl CanonicalCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, g: &Graph) -> Result<Graph, ModelsError> {
        check_order(g.order())?;
        let key = (g.order(), g.edge_mask());
        if let Some(rep) = self.map.get(&key) {
            return Ok(rep.clone());
        }
        let rep = canonical_rep(g)?;
        self.map.insert(key, rep.clone());
        Ok(rep)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
