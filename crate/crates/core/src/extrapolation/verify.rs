//! Checking the inequalities on concrete graphs, metrics and maps.

use std::sync::Arc;

use super::{constants, nonconc_params, one_sided_gamma, ExtrapolationConstants, ExtrapolationError, NonConcParams};
use crate::graph::{cheeger_bounds, cheeger_exact, spectrum, Graph, CHEEGER_EXACT_LIMIT};
use crate::metric::FiniteMetric;
use crate::poincare::{gamma_exact, gamma_lower_search, gamma_of_map, gamma_report, Concentration, ImageDistances};

/// `h(G)` exactly for small graphs, otherwise the lower bound `(d − λ₂)/2`.
///
/// Returns the value and whether it is exact.
pub fn certified_cheeger(g: &Graph) -> Result<(f64, bool), ExtrapolationError> {
    if g.order() <= CHEEGER_EXACT_LIMIT {
        let h = cheeger_exact(g)?;
        return Ok((*h.numer() as f64 / *h.denom() as f64, true));
    }
    let (lo, _) = cheeger_bounds(g, &spectrum(g))?;
    Ok((lo, false))
}

/// One inequality `lhs ≤ rhs` compared through logarithms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    pub ln_lhs: f64,
    pub ln_rhs: f64,
    pub pass: bool,
    /// `ln rhs − ln lhs`; positive when the inequality holds strictly.
    pub slack_log: f64,
}

pub fn log_compare(ln_lhs: f64, ln_rhs: f64) -> InequalityCheck {
    let slack_log = if ln_lhs == ln_rhs { 0.0 } else { ln_rhs - ln_lhs };
    InequalityCheck { ln_lhs, ln_rhs, pass: ln_lhs <= ln_rhs, slack_log }
}

#[derive(Debug, Clone, PartialEq)]
pub enum NonConcVerdict {
    /// `f` is `(C_R, q, τ)`-concentrated, so the bound says nothing.
    HypothesisNotMet { ave: f64, quantile: f64 },
    /// `ave ≤ bound · dirichlet` was evaluated.
    Checked { ave: f64, dirichlet: f64, params: NonConcParams, check: InequalityCheck },
}

impl NonConcVerdict {
    /// False only for a checked map that violates the bound.
    pub fn holds(&self) -> bool {
        match self {
            NonConcVerdict::HypothesisNotMet { .. } => true,
            NonConcVerdict::Checked { check, .. } => check.pass,
        }
    }
}

/// Tests the Poincaré bound for a map that is not concentrated.
///
/// `h` must be `h(G)` or a lower bound for it (see [`certified_cheeger`]).
pub fn check_nonconcentrated(
    g: &Graph,
    f: &impl ImageDistances,
    q: f64,
    c_r: f64,
    tau: f64,
    h: f64,
) -> Result<NonConcVerdict, ExtrapolationError> {
    let d = g.regular_degree().ok_or(ExtrapolationError::NotRegular)?;
    let n = g.order() as f64;
    if !(tau > 1.0 / n && tau < 1.0) {
        return Err(ExtrapolationError::TauOutOfRange(tau));
    }
    let params = nonconc_params(d, h, q, tau, c_r)?;
    let report = gamma_report(g, f, q, Concentration { k: c_r, tau })?;
    if report.concentrated {
        return Ok(NonConcVerdict::HypothesisNotMet { ave: report.ave, quantile: report.quantile });
    }
    let check = log_compare(report.ave.ln(), params.ln_bound + report.dirichlet.ln());
    Ok(NonConcVerdict::Checked { ave: report.ave, dirichlet: report.dirichlet, params, check })
}

/// How the two Poincaré constants are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaSource {
    /// Exhaustive search over all maps.
    Exact,
    /// Hill-climbing lower bounds; a failure is then only indicative.
    LowerBound { iters: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtrapolationVerdict {
    pub constants: ExtrapolationConstants,
    pub gamma_p: f64,
    pub gamma_q: f64,
    /// `γ_p ≤ max{C₁, C₂·max{1, γ_q}}`.
    pub first: InequalityCheck,
    /// `γ_q ≤ max{C₃, C₄·γ_p^{q/p}}`.
    pub second: InequalityCheck,
    /// True when both γ values are exact.
    pub certified: bool,
}

impl ExtrapolationVerdict {
    pub fn pass(&self) -> bool {
        self.first.pass && self.second.pass
    }
}

/// Compares `γ(G, ρ^p)` with `γ(G, ρ^q)` in both directions.
///
/// For `p < 1` the constants are those of the snowflake `ρ^p` with exponents
/// `(1, q/p)`; the γ values are unchanged since `(ρ^p)^{q/p} = ρ^q`.
pub fn check_extrapolation(
    g: &Graph,
    m: &Arc<FiniteMetric>,
    p: f64,
    q: f64,
    h: f64,
    source: GammaSource,
) -> Result<ExtrapolationVerdict, ExtrapolationError> {
    let d = g.regular_degree().ok_or(ExtrapolationError::NotRegular)?;
    g.require_connected()?;
    let c = constants(d, h, p, q)?;
    let (gamma_p, gamma_q) = match source {
        GammaSource::Exact => (gamma_exact(g, m, p)?.value, gamma_exact(g, m, q)?.value),
        GammaSource::LowerBound { iters, seed } => {
            let lo = |e: f64| -> Result<f64, ExtrapolationError> {
                Ok(gamma_lower_search(g, m, e, iters, seed)?.value.unwrap_or(0.0))
            };
            (lo(p)?, lo(q)?)
        }
    };
    let (ln_p, ln_q) = (gamma_p.ln(), gamma_q.ln());
    // Exponent ratio of the (possibly reduced) pair; equals q/p either way.
    let ratio = q / p;
    let first = log_compare(ln_p, c.ln_c1.max(c.ln_c2 + ln_q.max(0.0)));
    let second = log_compare(ln_q, c.ln_c3.max(c.ln_c4 + ratio * ln_p));
    Ok(ExtrapolationVerdict {
        constants: c,
        gamma_p,
        gamma_q,
        first,
        second,
        certified: source == GammaSource::Exact,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum OneSidedVerdict {
    /// `f` is constant.
    Degenerate,
    /// `γ(G, ρ^p; f) > C`.
    HypothesisNotMet { ratio_p: f64 },
    Checked { ratio_p: f64, ratio_q: f64, ln_gamma: f64, check: InequalityCheck },
}

impl OneSidedVerdict {
    pub fn holds(&self) -> bool {
        match self {
            OneSidedVerdict::Checked { check, .. } => check.pass,
            _ => true,
        }
    }
}

/// If `γ(G, ρ^p; f) ≤ C`, tests `γ(G, ρ^q; f) ≤ Γ(d, h, p, q, C)`.
pub fn check_one_sided(
    g: &Graph,
    f: &impl ImageDistances,
    p: f64,
    q: f64,
    c: f64,
    h: f64,
) -> Result<OneSidedVerdict, ExtrapolationError> {
    let d = g.regular_degree().ok_or(ExtrapolationError::NotRegular)?;
    let ln_gamma = one_sided_gamma(d, h, p, q, c)?;
    let Some(ratio_p) = gamma_of_map(g, f, p)?.ratio else {
        return Ok(OneSidedVerdict::Degenerate);
    };
    if ratio_p > c {
        return Ok(OneSidedVerdict::HypothesisNotMet { ratio_p });
    }
    let ratio_q = gamma_of_map(g, f, q)?.ratio.expect("non-constant under p is non-constant under q");
    let check = log_compare(ratio_q.ln(), ln_gamma);
    Ok(OneSidedVerdict::Checked { ratio_p, ratio_q, ln_gamma, check })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poincare::VertexMap;

    #[test]
    fn cheeger_inputs() {
        assert_eq!(certified_cheeger(&Graph::complete(4)).unwrap(), (2.0, true));
        let big = crate::graph::random_regular(40, 3, 5).unwrap();
        let (h, exact) = certified_cheeger(&big).unwrap();
        assert!(!exact && h >= 0.0);
    }

    #[test]
    fn constant_map_is_concentrated() {
        let g = Graph::complete(4);
        let m = Arc::new(FiniteMetric::uniform(2).unwrap());
        let f = VertexMap::constant(m, 4, 1).unwrap();
        let v = check_nonconcentrated(&g, &f, 1.0, 5.0, 0.5, 2.0).unwrap();
        assert!(matches!(v, NonConcVerdict::HypothesisNotMet { .. }));
    }

    #[test]
    fn half_half_on_k4() {
        let g = Graph::complete(4);
        let m = Arc::new(FiniteMetric::uniform(2).unwrap());
        let f = VertexMap::new(m, vec![0, 0, 1, 1]).unwrap();
        match check_nonconcentrated(&g, &f, 1.0, 5.0, 0.5, 2.0).unwrap() {
            NonConcVerdict::Checked { ave, check, .. } => {
                assert_eq!(ave, 0.5);
                assert!(check.pass && check.slack_log > 0.0);
            }
            other => panic!("expected a checked verdict, got {other:?}"),
        }
        assert!(check_nonconcentrated(&g, &f, 1.0, 5.0, 0.25, 2.0).is_err());
    }

    #[test]
    fn equal_exponents_pass() {
        let g = Graph::prism(3);
        let m = Arc::new(FiniteMetric::line(&[0.0, 1.0, 3.0]).unwrap());
        let (h, _) = certified_cheeger(&g).unwrap();
        let v = check_extrapolation(&g, &m, 2.0, 2.0, h, GammaSource::Exact).unwrap();
        assert!(v.pass() && v.certified);
        assert!(v.first.slack_log > 0.0 && v.second.slack_log > 0.0);
    }

    #[test]
    fn sub_unit_p_uses_snowflake_constants() {
        let g = Graph::complete(4);
        let m = Arc::new(FiniteMetric::line(&[0.0, 1.0, 3.0]).unwrap());
        let v = check_extrapolation(&g, &m, 0.5, 1.0, 2.0, GammaSource::Exact).unwrap();
        assert!(v.constants.via_snowflake && v.pass());
        let snow = Arc::new(m.snowflake(0.5).unwrap());
        let direct = gamma_exact(&g, &snow, 1.0).unwrap().value;
        assert!((direct - v.gamma_p).abs() <= 1e-12 * direct);
    }

    #[test]
    fn lower_bound_mode_is_uncertified() {
        let g = Graph::petersen();
        let m = Arc::new(FiniteMetric::uniform(3).unwrap());
        let v = check_extrapolation(&g, &m, 1.0, 2.0, 1.0, GammaSource::LowerBound { iters: 200, seed: 1 }).unwrap();
        assert!(!v.certified && v.pass());
    }

    #[test]
    fn one_sided_examples() {
        let g = Graph::complete(4);
        let m = Arc::new(FiniteMetric::line(&[0.0, 1.0, 3.0]).unwrap());
        let spread = VertexMap::new(m.clone(), vec![0, 1, 2, 2]).unwrap();
        assert!(check_one_sided(&g, &spread, 1.0, 2.0, 2.0, 2.0).unwrap().holds());
        let constant = VertexMap::constant(m.clone(), 4, 0).unwrap();
        assert_eq!(check_one_sided(&g, &constant, 1.0, 2.0, 2.0, 2.0).unwrap(), OneSidedVerdict::Degenerate);
        let tiny = check_one_sided(&g, &spread, 1.0, 2.0, 0.1, 2.0).unwrap();
        assert!(matches!(tiny, OneSidedVerdict::HypothesisNotMet { .. }));
    }

    #[test]
    fn log_compare_slack() {
        let c = log_compare(1.0, 3.0);
        assert!(c.pass && c.slack_log == 2.0);
        let c = log_compare(f64::NEG_INFINITY, f64::NEG_INFINITY);
        assert!(c.pass && c.slack_log == 0.0);
        assert!(!log_compare(1.0, f64::NEG_INFINITY).pass);
    }
}
