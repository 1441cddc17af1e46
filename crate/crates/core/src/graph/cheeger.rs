//! Edge expansion: exact by subset enumeration, and the spectral bracket.

use num_rational::Ratio;

use super::{Graph, GraphError, Spectrum};

/// Exact Cheeger constant as a reduced fraction `cut / |S|`.
pub type CheegerValue = Ratio<i64>;

/// Largest order accepted by [`cheeger_exact`].
pub const CHEEGER_EXACT_LIMIT: usize = 22;

/// `min_{0 < |S| ≤ n/2} |E(S, Sᶜ)| / |S|` over all subsets.
pub fn cheeger_exact(g: &Graph) -> Result<CheegerValue, GraphError> {
    cheeger_exact_with_limit(g, CHEEGER_EXACT_LIMIT)
}

/// [`cheeger_exact`] with a caller-chosen size limit (at most 63).
pub fn cheeger_exact_with_limit(g: &Graph, limit: usize) -> Result<CheegerValue, GraphError> {
    let n = g.order();
    if n > limit.min(63) {
        return Err(GraphError::CheegerLimit { n, limit });
    }
    if n < 2 {
        return Err(GraphError::EmptyVertexSet);
    }
    let masks = g.neighbor_masks();
    let half = n / 2;
    let (mut best_cut, mut best_size) = (u64::MAX, 1u64);
    let (mut set, mut size, mut cut) = (0u64, 0u64, 0u64);
    // Gray code: step i flips the vertex at the lowest set bit of i.
    for i in 1u64..(1u64 << n) {
        let v = i.trailing_zeros() as usize;
        let bit = 1u64 << v;
        let deg = masks[v].count_ones() as u64;
        let inside = (masks[v] & set).count_ones() as u64;
        if set & bit == 0 {
            set |= bit;
            size += 1;
            cut = cut + deg - 2 * inside;
        } else {
            set &= !bit;
            size -= 1;
            cut = cut + 2 * inside - deg;
        }
        if size as usize <= half && cut * best_size < best_cut.saturating_mul(size) {
            best_cut = cut;
            best_size = size;
        }
    }
    Ok(Ratio::new(best_cut as i64, best_size as i64))
}

/// The interval `[(d − λ₂)/2, √(2d(d − λ₂))]` containing the Cheeger constant of a d-regular graph.
pub fn cheeger_bounds(g: &Graph, spectrum: &Spectrum) -> Result<(f64, f64), GraphError> {
    let d = g.require_regular()? as f64;
    let gap = (d - spectrum.lambda2()).max(0.0);
    Ok((gap / 2.0, (2.0 * d * gap).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::super::spectrum;
    use super::*;

    /// Direct minimisation without Gray-code bookkeeping.
    fn naive(g: &Graph) -> CheegerValue {
        let n = g.order();
        let mut best: Option<CheegerValue> = None;
        for mask in 1u32..(1 << n) {
            let size = mask.count_ones() as i64;
            if size as usize > n / 2 {
                continue;
            }
            let cut = g.edges().iter().filter(|&&(a, b)| ((mask >> a) & 1) != ((mask >> b) & 1)).count() as i64;
            let r = Ratio::new(cut, size);
            if best.is_none_or(|b| r < b) {
                best = Some(r);
            }
        }
        best.unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(cheeger_exact(&Graph::complete(4)).unwrap(), Ratio::from_integer(2));
        assert_eq!(cheeger_exact(&Graph::cycle(4)).unwrap(), Ratio::from_integer(1));
        let triangles = Graph::complete(3).disjoint_union(&Graph::complete(3));
        assert_eq!(cheeger_exact(&triangles).unwrap(), Ratio::from_integer(0));
        assert_eq!(cheeger_exact(&Graph::petersen()).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn gray_code_agrees_with_naive() {
        for g in [Graph::cycle(7), Graph::prism(4), Graph::hypercube(3), Graph::path(6), Graph::complete_bipartite(2, 5)] {
            assert_eq!(cheeger_exact(&g).unwrap(), naive(&g), "{g:?}");
        }
    }

    #[test]
    fn limit_is_enforced() {
        let g = Graph::cycle(23);
        assert_eq!(cheeger_exact(&g), Err(GraphError::CheegerLimit { n: 23, limit: 22 }));
        assert!(cheeger_exact_with_limit(&Graph::cycle(10), 8).is_err());
    }

    #[test]
    fn bracket_examples() {
        let c4 = Graph::cycle(4);
        let (lo, hi) = cheeger_bounds(&c4, &spectrum(&c4)).unwrap();
        assert!((lo - 1.0).abs() < 1e-9 && (hi - 8f64.sqrt()).abs() < 1e-9);
        let k4 = Graph::complete(4);
        let (lo, hi) = cheeger_bounds(&k4, &spectrum(&k4)).unwrap();
        assert!((lo - 2.0).abs() < 1e-9 && (hi - 24f64.sqrt()).abs() < 1e-9);
        let p3 = Graph::path(3);
        assert_eq!(cheeger_bounds(&p3, &spectrum(&p3)), Err(GraphError::NotRegular));
    }
}
