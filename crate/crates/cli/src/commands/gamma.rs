//! `gamma`, `extrapolate` and `nonconc`.

use std::path::PathBuf;
use std::sync::Arc;

use clap::Args;
use nlgap::extrapolation::{
    certified_cheeger, check_extrapolation, check_nonconcentrated, desk_suite, GammaSource, NonConcVerdict, SuiteRow,
    EXTRAPOLATION_CSV_HEADER,
};
use nlgap::poincare::{all_maps, gamma_exact, gamma_lower_search, gamma_of_map, PoincareError, RatioDisplay};
use nlgap::{GammaReport, VertexMap};

use super::csv_label;
use crate::error::{CliError, Result};
use crate::input::{load_map, load_metric, GraphArgs};
use crate::report::{write_output, Report};
use crate::{Ctx, Output};

#[derive(Debug, Args)]
pub struct GammaArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Target metric: uniform:N, line:.., grid:K,S, random:N, path, or a file.
    #[arg(long)]
    pub metric: String,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    /// Skip exhaustive search and run the hill-climbing lower bound.
    #[arg(long)]
    pub heuristic: bool,
    /// Evaluation budget of the lower-bound search.
    #[arg(long, default_value_t = 10_000)]
    pub iters: u64,
    /// Write the maximizing map here.
    #[arg(long)]
    pub map_out: Option<PathBuf>,
}

pub fn gamma(ctx: &Ctx, a: GammaArgs) -> Result<Output> {
    let source = a.graph.source()?;
    let g = source.load(ctx.seed())?;
    let m = Arc::new(load_metric(&a.metric, Some(&g), ctx.seed())?);
    let mut report = Report::new("gamma", format!("method,gamma,evaluations,{}", GammaReport::CSV_HEADER));
    report
        .config("graph", source.describe())
        .config("metric", &a.metric)
        .config("q", a.q)
        .config("heuristic", a.heuristic)
        .config("iters", a.iters)
        .config("seed", ctx.seed());

    let exact = if a.heuristic {
        None
    } else {
        match gamma_exact(&g, &m, a.q) {
            Ok(e) => Some(e),
            Err(PoincareError::ExhaustiveCap { maps, cap }) => {
                report.note(format!("exhaustive search over {maps:e} maps exceeds {cap:e}; reporting a lower bound"));
                None
            }
            Err(e) => return Err(e.into()),
        }
    };
    let (method, value, evaluations, map) = match exact {
        Some(e) => ("exact", Some(e.value), e.maps_examined, e.witness),
        None => {
            let s = gamma_lower_search(&g, &m, a.q, a.iters, ctx.seed())?;
            ("lower-bound", s.value, s.evaluations, s.best)
        }
    };
    let stats = gamma_of_map(&g, &map, a.q)?;
    report.row(format!("{method},{},{evaluations},{}", RatioDisplay(value), stats.csv_row()));
    if let Some(path) = &a.map_out {
        write_output(Some(path), &map.to_text())?;
    }
    Ok(Output::Report(report))
}

#[derive(Debug, Args)]
pub struct ExtrapolateArgs {
    /// Run a built-in suite instead of a single instance (only `desk`).
    #[arg(long)]
    pub suite: Option<String>,
    /// Exponent pairs for the suite, as p:q separated by commas.
    #[arg(long, default_value = "1:1,1:2,1:3,2:3")]
    pub pairs: String,
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub metric: Option<String>,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    /// Use lower bounds instead of exact constants (verdicts are then uncertified).
    #[arg(long)]
    pub heuristic: bool,
    #[arg(long, default_value_t = 10_000)]
    pub iters: u64,
}

fn parse_pairs(text: &str) -> Result<Vec<(f64, f64)>> {
    text.split(',')
        .map(|pair| {
            let parsed = pair.split_once(':').and_then(|(p, q)| Some((p.trim().parse().ok()?, q.trim().parse().ok()?)));
            parsed.ok_or_else(|| CliError::Spec { what: "exponent pair", value: pair.into(), hint: "expected p:q".into() })
        })
        .collect()
}

pub fn extrapolate(ctx: &Ctx, a: ExtrapolateArgs) -> Result<Output> {
    let mut report = Report::new("extrapolate", format!("{EXTRAPOLATION_CSV_HEADER},certified"));
    if let Some(suite) = &a.suite {
        if suite != "desk" {
            return Err(CliError::Usage(format!("unknown suite {suite:?}; the available suite is `desk`")));
        }
        let pairs = parse_pairs(&a.pairs)?;
        report.config("suite", suite).config("pairs", &a.pairs);
        let summary = desk_suite(&pairs)?;
        for row in &summary.rows {
            for line in row.csv_rows() {
                report.row(format!("{line},{}", row.verdict.certified));
            }
        }
        report.note(format!(
            "instances={} failed_inequalities={} min_slack_log={}",
            summary.rows.len(),
            summary.failures,
            summary.min_slack_log
        ));
        report.fail_if(summary.failures > 0);
        return Ok(Output::Report(report));
    }

    let metric = a.metric.as_deref().ok_or_else(|| CliError::Usage("pass --suite desk, or a graph and --metric".into()))?;
    let source = a.graph.source()?;
    let g = source.load(ctx.seed())?;
    let m = Arc::new(load_metric(metric, Some(&g), ctx.seed())?);
    let (h, exact_h) = certified_cheeger(&g)?;
    let gamma_source =
        if a.heuristic { GammaSource::LowerBound { iters: a.iters, seed: ctx.seed() } } else { GammaSource::Exact };
    report
        .config("graph", source.describe())
        .config("metric", metric)
        .config("p", a.p)
        .config("q", a.q)
        .config("h", h)
        .config("h_exact", exact_h)
        .config("heuristic", a.heuristic)
        .config("seed", ctx.seed());
    let verdict = check_extrapolation(&g, &m, a.p, a.q, h, gamma_source)?;
    if verdict.constants.via_snowflake {
        report.note("constants taken from the snowflake with exponents (1, q/p)");
    }
    let row = SuiteRow { graph: csv_label(&source.describe()), metric: csv_label(metric), verdict };
    for line in row.csv_rows() {
        report.row(format!("{line},{}", row.verdict.certified));
    }
    report.fail_if(!row.verdict.pass());
    Ok(Output::Report(report))
}

#[derive(Debug, Args)]
pub struct NonconcArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub metric: String,
    /// Map file; without it every map is checked.
    #[arg(long)]
    pub map: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    #[arg(long, default_value_t = 0.5)]
    pub tau: f64,
    /// Concentration constant (default 5^q).
    #[arg(long)]
    pub c_r: Option<f64>,
}

/// Largest number of maps `nonconc` enumerates.
const ALL_MAPS_CAP: f64 = 1e7;

pub fn nonconc(ctx: &Ctx, a: NonconcArgs) -> Result<Output> {
    let source = a.graph.source()?;
    let g = source.load(ctx.seed())?;
    let m = Arc::new(load_metric(&a.metric, Some(&g), ctx.seed())?);
    let c_r = a.c_r.unwrap_or_else(|| 5f64.powf(a.q));
    let (h, exact_h) = certified_cheeger(&g)?;
    let mut report =
        Report::new("nonconc", "map,concentrated,ave,quantile,dirichlet,ell,ln_bound,lhs,rhs,pass,slack_log");
    report
        .config("graph", source.describe())
        .config("metric", &a.metric)
        .config("q", a.q)
        .config("tau", a.tau)
        .config("c_r", c_r)
        .config("h", h)
        .config("h_exact", exact_h);

    let maps: Vec<(String, VertexMap)> = match &a.map {
        Some(path) => vec![(csv_label(&path.display().to_string()), load_map(path, m.clone())?)],
        None => {
            let count = (m.len() as f64).powi(g.order() as i32);
            if count > ALL_MAPS_CAP {
                return Err(CliError::Usage(format!("{count:e} maps exceed the enumeration cap {ALL_MAPS_CAP:e}; pass --map")));
            }
            all_maps(g.order(), m.len())
                .enumerate()
                .map(|(i, assignment)| Ok((i.to_string(), VertexMap::new(m.clone(), assignment)?)))
                .collect::<Result<_>>()?
        }
    };
    let (mut checked, mut violations) = (0usize, 0usize);
    for (id, f) in &maps {
        match check_nonconcentrated(&g, f, a.q, c_r, a.tau, h)? {
            NonConcVerdict::HypothesisNotMet { ave, quantile } => {
                report.row(format!("{id},true,{ave:?},{quantile:?},,,,,,,"));
            }
            NonConcVerdict::Checked { ave, dirichlet, params, check } => {
                checked += 1;
                violations += usize::from(!check.pass);
                let quantile = nlgap::poincare::empirical_quantile(f, a.tau);
                report.row(format!(
                    "{id},false,{ave:?},{quantile:?},{dirichlet:?},{},{:?},{:?},{:?},{},{:?}",
                    params.ell, params.ln_bound, check.ln_lhs, check.ln_rhs, check.pass, check.slack_log
                ));
            }
        }
    }
    report.note(format!("maps={} checked={checked} violations={violations}", maps.len()));
    report.fail_if(violations > 0);
    Ok(Output::Report(report))
}
