//! Empirical average, quantile, concentration and the Dirichlet form of one map.

use std::fmt;

use super::{ImageDistances, PoincareError};
use crate::graph::Graph;
use crate::metric::power_cost;

/// `(1/n²) Σ_{v,u} ρ(f(v), f(u))^q` over ordered pairs, diagonal included.
pub fn empirical_average(f: &impl ImageDistances, q: f64) -> f64 {
    average_from_histogram(&f.pair_histogram(), f.vertex_count(), q)
}

fn average_from_histogram(hist: &[(f64, u64)], n: usize, q: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let sum: f64 = hist.iter().map(|&(d, c)| c as f64 * power_cost(d, q)).sum();
    sum / (n * n) as f64
}

/// `inf{t > 0 : #{(v, u) : ρ(f(v), f(u)) ≤ t} ≥ τn²}`.
///
/// Returns 0 when the zero-distance pairs alone reach `τn²`; otherwise the
/// smallest realised distance at which the cumulative count does.
pub fn empirical_quantile(f: &impl ImageDistances, tau: f64) -> f64 {
    quantile_from_histogram(&f.pair_histogram(), f.vertex_count(), tau)
}

fn quantile_from_histogram(hist: &[(f64, u64)], n: usize, tau: f64) -> f64 {
    let needed = tau * (n * n) as f64;
    let mut cumulative = 0u64;
    for &(d, c) in hist {
        cumulative += c;
        if cumulative as f64 >= needed {
            return d;
        }
    }
    hist.last().map_or(0.0, |x| x.0)
}

/// Whether `ave(f, q) ≤ K · Q_τ(f)^q`.
pub fn is_concentrated(f: &impl ImageDistances, k: f64, q: f64, tau: f64) -> bool {
    let hist = f.pair_histogram();
    let n = f.vertex_count();
    average_from_histogram(&hist, n, q) <= k * power_cost(quantile_from_histogram(&hist, n, tau), q)
}

/// `(1/|E|) Σ_{{v,u} ∈ E} ρ(f(v), f(u))^q`; zero for an edgeless graph.
pub fn dirichlet(g: &Graph, f: &impl ImageDistances, q: f64) -> f64 {
    if g.edge_count() == 0 {
        return 0.0;
    }
    let sum: f64 = g.edges().iter().map(|&(v, u)| power_cost(f.image_distance(v, u), q)).sum();
    sum / g.edge_count() as f64
}

/// Parameters of the concentration verdict attached to a [`GammaReport`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Concentration {
    pub k: f64,
    pub tau: f64,
}

impl Concentration {
    /// `K = 5^q`, `τ = 1/2`.
    pub fn standard(q: f64) -> Self {
        Self { k: 5f64.powf(q), tau: 0.5 }
    }
}

/// Statistics of one map `f` at exponent `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaReport {
    pub n: usize,
    /// Maximum degree of the graph.
    pub d: usize,
    /// Number of points of the target space (may be astronomically large).
    pub points: f64,
    pub q: f64,
    pub ave: f64,
    pub dirichlet: f64,
    /// `ave / dirichlet`; `None` when both vanish, `+∞` when only the Dirichlet form does.
    pub ratio: Option<f64>,
    pub tau: f64,
    pub quantile: f64,
    pub k: f64,
    pub concentrated: bool,
}

impl GammaReport {
    pub fn is_degenerate(&self) -> bool {
        self.ratio.is_none()
    }

    pub const CSV_HEADER: &'static str = "n,d,N,q,ave,dirichlet,ratio,Qtau,concentrated";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{:?},{:?},{:?},{},{:?},{}",
            self.n,
            self.d,
            CountDisplay(self.points),
            self.q,
            self.ave,
            self.dirichlet,
            RatioDisplay(self.ratio),
            self.quantile,
            self.concentrated
        )
    }
}

/// Formats a point count as an integer when it is exactly representable.
pub struct CountDisplay(pub f64);

impl fmt::Display for CountDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.fract() == 0.0 && self.0.abs() < 9.0e15 {
            write!(f, "{}", self.0 as i64)
        } else {
            write!(f, "{:?}", self.0)
        }
    }
}

/// Formats a ratio as a shortest round-trip decimal, `inf`, or `degenerate`.
pub struct RatioDisplay(pub Option<f64>);

impl fmt::Display for RatioDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => f.write_str("degenerate"),
            Some(r) if r.is_infinite() => f.write_str("inf"),
            Some(r) => write!(f, "{r:?}"),
        }
    }
}

pub(crate) fn ratio_of(ave: f64, dirichlet: f64) -> Option<f64> {
    match (ave > 0.0, dirichlet > 0.0) {
        (false, false) => None,
        (true, false) => Some(f64::INFINITY),
        _ => Some(ave / dirichlet),
    }
}

/// [`gamma_report`] with the standard concentration parameters.
pub fn gamma_of_map(g: &Graph, f: &impl ImageDistances, q: f64) -> Result<GammaReport, PoincareError> {
    gamma_report(g, f, q, Concentration::standard(q))
}

/// Full statistics of `f` on `g`.
pub fn gamma_report(g: &Graph, f: &impl ImageDistances, q: f64, conc: Concentration) -> Result<GammaReport, PoincareError> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(PoincareError::InvalidExponent(q));
    }
    if !(conc.tau > 0.0 && conc.tau < 1.0) {
        return Err(PoincareError::InvalidTau(conc.tau));
    }
    let n = f.vertex_count();
    if n != g.order() {
        return Err(PoincareError::LengthMismatch { map: n, graph: g.order() });
    }
    let hist = f.pair_histogram();
    let ave = average_from_histogram(&hist, n, q);
    let quantile = quantile_from_histogram(&hist, n, conc.tau);
    let dir = dirichlet(g, f, q);
    Ok(GammaReport {
        n,
        d: g.max_degree(),
        points: f.target_points(),
        q,
        ave,
        dirichlet: dir,
        ratio: ratio_of(ave, dir),
        tau: conc.tau,
        quantile,
        k: conc.k,
        concentrated: ave <= conc.k * power_cost(quantile, q),
    })
}
