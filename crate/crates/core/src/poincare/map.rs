//! Maps from graph vertices into a finite metric space.

use std::str::FromStr as _;
use std::sync::Arc;

use rayon::prelude::*;

use super::PoincareError;
use crate::metric::FiniteMetric;

/// Anything that assigns a distance to every ordered pair of vertices images.
///
/// Implemented by [`VertexMap`] and by embeddings whose target points are
/// stored as coordinates rather than indices into a [`FiniteMetric`].
pub trait ImageDistances: Sync {
    fn vertex_count(&self) -> usize;

    /// `ρ(f(v), f(u))`.
    fn image_distance(&self, v: usize, u: usize) -> f64;

    /// Size of the target space.
    fn target_points(&self) -> f64;

    /// Image distances over all ordered pairs `(v, u)` as `(distance, count)`,
    /// sorted by distance with exact duplicates merged.
    fn pair_histogram(&self) -> Vec<(f64, u64)> {
        let n = self.vertex_count();
        let mut all: Vec<f64> = (0..n)
            .into_par_iter()
            .flat_map_iter(|v| (0..n).map(move |u| self.image_distance(v, u)))
            .collect();
        all.par_sort_unstable_by(f64::total_cmp);
        merge_sorted(all.into_iter().map(|d| (d, 1)))
    }
}

pub(crate) fn merge_sorted(items: impl Iterator<Item = (f64, u64)>) -> Vec<(f64, u64)> {
    let mut out: Vec<(f64, u64)> = Vec::new();
    for (d, c) in items {
        match out.last_mut() {
            Some((last, count)) if *last == d => *count += c,
            _ => out.push((d, c)),
        }
    }
    out
}

/// An assignment `f: [n] → M` of vertices to points of `target`.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexMap {
    target: Arc<FiniteMetric>,
    assignment: Vec<usize>,
}

impl VertexMap {
    pub fn new(target: Arc<FiniteMetric>, assignment: Vec<usize>) -> Result<Self, PoincareError> {
        let points = target.len();
        if let Some((vertex, &point)) = assignment.iter().enumerate().find(|(_, &p)| p >= points) {
            return Err(PoincareError::PointOutOfRange { vertex, point, points });
        }
        Ok(Self { target, assignment })
    }

    /// The map sending every vertex to `point`.
    pub fn constant(target: Arc<FiniteMetric>, n: usize, point: usize) -> Result<Self, PoincareError> {
        Self::new(target, vec![point; n])
    }

    pub fn target(&self) -> &FiniteMetric {
        &self.target
    }

    pub fn target_arc(&self) -> &Arc<FiniteMetric> {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn image(&self, v: usize) -> usize {
        self.assignment[v]
    }

    /// Sorted distinct image points.
    pub fn distinct_images(&self) -> Vec<usize> {
        let mut images = self.assignment.clone();
        images.sort_unstable();
        images.dedup();
        images
    }

    pub fn is_constant(&self) -> bool {
        self.assignment.windows(2).all(|w| w[0] == w[1])
    }

    /// Text form: `n`, then `n` lines `vertex point-index`.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.assignment.len());
        for (v, p) in self.assignment.iter().enumerate() {
            out.push_str(&format!("{v} {p}\n"));
        }
        out
    }

    /// Parses the text form against a known target space.
    pub fn parse(text: &str, target: Arc<FiniteMetric>) -> Result<Self, PoincareError> {
        let bad = |msg: String| PoincareError::Parse(msg);
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| bad("missing header line".into()))?;
        let n = usize::from_str(header).map_err(|_| bad(format!("bad vertex count {header:?}")))?;
        let mut assignment = vec![None; n];
        for line in lines {
            let mut it = line.split_whitespace().map(usize::from_str);
            let (v, p) = match (it.next(), it.next(), it.next()) {
                (Some(Ok(v)), Some(Ok(p)), None) => (v, p),
                _ => return Err(bad(format!("expected `vertex point`, got {line:?}"))),
            };
            let slot = assignment.get_mut(v).ok_or_else(|| bad(format!("vertex {v} out of range")))?;
            if slot.replace(p).is_some() {
                return Err(bad(format!("vertex {v} assigned twice")));
            }
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(v, p)| p.ok_or_else(|| bad(format!("vertex {v} has no image"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(target, assignment)
    }
}

impl ImageDistances for VertexMap {
    fn vertex_count(&self) -> usize {
        self.assignment.len()
    }

    fn image_distance(&self, v: usize, u: usize) -> f64 {
        self.target.dist(self.assignment[v], self.assignment[u])
    }

    fn target_points(&self) -> f64 {
        self.target.len() as f64
    }

    /// Computed from image multiplicities, so the cost depends on the image size only.
    fn pair_histogram(&self) -> Vec<(f64, u64)> {
        let images = self.distinct_images();
        let counts: Vec<u64> = {
            let mut sorted = self.assignment.clone();
            sorted.sort_unstable();
            images.iter().map(|x| (sorted.partition_point(|p| p <= x) - sorted.partition_point(|p| p < x)) as u64).collect()
        };
        let mut items: Vec<(f64, u64)> = Vec::with_capacity(images.len() * images.len());
        for (i, &x) in images.iter().enumerate() {
            for (j, &y) in images.iter().enumerate() {
                items.push((self.target.dist(x, y), counts[i] * counts[j]));
            }
        }
        items.sort_by(|a, b| a.0.total_cmp(&b.0));
        merge_sorted(items.into_iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Brute<'a>(&'a VertexMap);

    impl ImageDistances for Brute<'_> {
        fn vertex_count(&self) -> usize {
            self.0.vertex_count()
        }
        fn image_distance(&self, v: usize, u: usize) -> f64 {
            self.0.image_distance(v, u)
        }
        fn target_points(&self) -> f64 {
            self.0.target_points()
        }
    }

    #[test]
    fn histogram_shortcut_matches_pair_scan() {
        let m = Arc::new(FiniteMetric::line(&[0.0, 1.0, 2.5, 4.0]).unwrap());
        let f = VertexMap::new(m, vec![0, 3, 3, 1, 0, 2, 3]).unwrap();
        assert_eq!(f.pair_histogram(), Brute(&f).pair_histogram());
        let total: u64 = f.pair_histogram().iter().map(|x| x.1).sum();
        assert_eq!(total, 49);
    }

    #[test]
    fn range_is_checked() {
        let m = Arc::new(FiniteMetric::uniform(2).unwrap());
        assert_eq!(
            VertexMap::new(m, vec![0, 2]),
            Err(PoincareError::PointOutOfRange { vertex: 1, point: 2, points: 2 })
        );
    }

    #[test]
    fn text_round_trip() {
        let m = Arc::new(FiniteMetric::uniform(3).unwrap());
        let f = VertexMap::new(m.clone(), vec![2, 0, 1, 1]).unwrap();
        let text = f.to_text();
        assert_eq!(text, "4\n0 2\n1 0\n2 1\n3 1\n");
        assert_eq!(VertexMap::parse(&text, m.clone()).unwrap(), f);
        assert!(VertexMap::parse("2\n0 1\n", m.clone()).is_err());
        assert!(VertexMap::parse("2\n0 1\n1 5\n", m).is_err());
    }
}
