//! Partition of a vertex set into `M + 1` parts whose members are pairwise
//! at distance at least `2m + 1`, with part sizes as equal as possible.
//!
//! `M = Σ_{j=1}^{2m} d(d−1)^{j−1}` bounds the number of other vertices
//! within distance `2m`, so a greedy colouring of the conflict graph with
//! `M + 1` colours always succeeds. Balancing moves a vertex from a largest
//! part to a smallest part whenever it has no conflict there.

use super::ModelsError;
use crate::graph::{ball, Graph};

/// Upper limit on `M + 1`.
const MAX_PARTS: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// `M + 1` parts, each sorted; some may be empty.
    pub parts: Vec<Vec<usize>>,
    /// `M`.
    pub colors: u64,
    /// Largest minus smallest part size.
    pub spread: usize,
    /// Whether all sizes lie in `⌊|W|/(M+1)⌋..=⌈|W|/(M+1)⌉`.
    pub equitable: bool,
    pub moves: u64,
}

/// `M = Σ_{j=1}^{2m} d(d−1)^{j−1}`, saturating.
pub fn decomposition_colors(d: usize, m: usize) -> u64 {
    let (d, mut term, mut sum) = (d as u64, d as u64, 0u64);
    for _ in 0..2 * m {
        sum = sum.saturating_add(term);
        term = term.saturating_mul(d.saturating_sub(1));
    }
    sum
}

pub fn equitable_decomposition(g: &Graph, w: &[usize], m: usize) -> Result<Decomposition, ModelsError> {
    let n = g.order();
    let mut w = w.to_vec();
    w.sort_unstable();
    w.dedup();
    if let Some(&vertex) = w.iter().find(|&&v| v >= n) {
        return Err(ModelsError::VertexOutOfRange { vertex, n });
    }
    let colors = decomposition_colors(g.max_degree(), m);
    let parts_count = colors.saturating_add(1);
    if parts_count > MAX_PARTS {
        return Err(ModelsError::TooManyParts(parts_count));
    }
    let parts_count = parts_count as usize;

    // Conflicts: other members of W within distance 2m.
    let mut position = vec![usize::MAX; n];
    for (i, &v) in w.iter().enumerate() {
        position[v] = i;
    }
    let conflicts: Vec<Vec<usize>> = w
        .iter()
        .map(|&v| {
            ball(g, &[v], 2 * m)
                .expect("non-empty source")
                .into_iter()
                .filter(|&u| u != v && position[u] != usize::MAX)
                .map(|u| position[u])
                .collect()
        })
        .collect();

    let mut color = vec![usize::MAX; w.len()];
    let mut used = vec![usize::MAX; parts_count];
    for i in 0..w.len() {
        for &j in &conflicts[i] {
            if color[j] != usize::MAX {
                used[color[j]] = i;
            }
        }
        color[i] = (0..parts_count).find(|&c| used[c] != i).expect("M + 1 colours suffice");
    }

    let mut sizes = vec![0usize; parts_count];
    for &c in &color {
        sizes[c] += 1;
    }
    let cap = 10u64.saturating_mul(w.len() as u64).saturating_mul(parts_count as u64);
    let mut moves = 0u64;
    while moves < cap {
        let big = (0..parts_count).max_by_key(|&c| (sizes[c], std::cmp::Reverse(c))).unwrap_or(0);
        let mut order: Vec<usize> = (0..parts_count).filter(|&c| sizes[c] + 2 <= sizes[big]).collect();
        if order.is_empty() {
            break;
        }
        order.sort_by_key(|&c| (sizes[c], c));
        // Move any vertex of an over-full part into an under-full part it does not conflict with.
        let mut moved = false;
        'search: for &small in &order {
            for source in (0..parts_count).filter(|&c| sizes[c] >= sizes[small] + 2) {
                for i in 0..w.len() {
                    if color[i] == source && conflicts[i].iter().all(|&j| color[j] != small) {
                        color[i] = small;
                        sizes[source] -= 1;
                        sizes[small] += 1;
                        moves += 1;
                        moved = true;
                        break 'search;
                    }
                }
            }
        }
        if !moved {
            break;
        }
    }

    let mut parts = vec![Vec::new(); parts_count];
    for (i, &c) in color.iter().enumerate() {
        parts[c].push(w[i]);
    }
    let lo = w.len() / parts_count;
    let hi = w.len().div_ceil(parts_count);
    let max = sizes.iter().copied().max().unwrap_or(0);
    let min = sizes.iter().copied().min().unwrap_or(0);
    Ok(Decomposition {
        parts,
        colors,
        spread: max - min,
        equitable: min >= lo && max <= hi,
        moves,
    })
}
