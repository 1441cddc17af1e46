//! The exhaustive desk-scale extrapolation suite.

use rayon::prelude::*;

use super::{certified_cheeger, check_extrapolation, ExtrapolationError, ExtrapolationVerdict, GammaSource};
use crate::corpus::{desk_graphs, desk_metrics};

pub const EXTRAPOLATION_CSV_HEADER: &str = "id,p,q,gamma_p,gamma_q,C1,C2,C3,C4,lhs,rhs,pass,slack_log";

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteRow {
    pub graph: String,
    pub metric: String,
    pub verdict: ExtrapolationVerdict,
}

impl SuiteRow {
    /// One CSV line per inequality; constants, `lhs` and `rhs` are natural logarithms.
    pub fn csv_rows(&self) -> [String; 2] {
        let v = &self.verdict;
        let c = &v.constants;
        let line = |tag: &str, check: &super::InequalityCheck| {
            format!(
                "{}/{}/{tag},{},{},{},{},{},{},{},{},{},{},{},{}",
                self.graph,
                self.metric,
                c.p,
                c.q,
                v.gamma_p,
                v.gamma_q,
                c.ln_c1,
                c.ln_c2,
                c.ln_c3,
                c.ln_c4,
                check.ln_lhs,
                check.ln_rhs,
                check.pass,
                check.slack_log
            )
        };
        [line("upper", &v.first), line("lower", &v.second)]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteSummary {
    pub rows: Vec<SuiteRow>,
    /// Number of failed inequalities.
    pub failures: usize,
    pub min_slack_log: f64,
}

/// Runs [`check_extrapolation`] with exact γ on every desk graph, desk metric
/// and exponent pair.
pub fn desk_suite(pairs: &[(f64, f64)]) -> Result<SuiteSummary, ExtrapolationError> {
    let graphs = desk_graphs();
    let metrics = desk_metrics();
    let mut jobs = Vec::new();
    for (gi, (_, g)) in graphs.iter().enumerate() {
        let (h, _) = certified_cheeger(g)?;
        for mi in 0..metrics.len() {
            for &(p, q) in pairs {
                jobs.push((gi, mi, h, p, q));
            }
        }
    }
    let rows: Vec<SuiteRow> = jobs
        .into_par_iter()
        .map(|(gi, mi, h, p, q)| {
            let verdict = check_extrapolation(&graphs[gi].1, &metrics[mi].1, p, q, h, GammaSource::Exact)?;
            Ok(SuiteRow { graph: graphs[gi].0.clone(), metric: metrics[mi].0.clone(), verdict })
        })
        .collect::<Result<_, ExtrapolationError>>()?;
    let failures = rows.iter().map(|r| usize::from(!r.verdict.first.pass) + usize::from(!r.verdict.second.pass)).sum();
    let min_slack_log = rows
        .iter()
        .flat_map(|r| [r.verdict.first.slack_log, r.verdict.second.slack_log])
        .fold(f64::INFINITY, f64::min);
    Ok(SuiteSummary { rows, failures, min_slack_log })
}
