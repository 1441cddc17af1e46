//! `spectra`, `gen-graph` and `gen-metric`.

use std::path::PathBuf;

use clap::Args;
use nlgap::graph::spectrum;
use nlgap::rng::SeedStream;
use nlgap::stats::Frequency;
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::input::{load_metric, GraphArgs};
use crate::report::{write_output, Report};
use crate::svg::{emit_svg, Series};
use crate::{Ctx, Output};

#[derive(Debug, Args)]
pub struct SpectraArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Independent draws (random sources only).
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// The threshold is (2 + slack)·√(d − 1).
    #[arg(long, default_value_t = 0.1)]
    pub slack: f64,
    /// One row per draw instead of the summary row.
    #[arg(long)]
    pub per_trial: bool,
    /// Chart of λ₂ per draw against the threshold.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

pub fn spectra(ctx: &Ctx, a: SpectraArgs) -> Result<Output> {
    let source = a.graph.source()?;
    let trials = if source.is_random() { a.trials } else { 1 };
    if trials == 0 {
        return Err(CliError::Usage("--trials must be positive".into()));
    }
    let stream = SeedStream::new(ctx.seed());
    let draws = (0..trials)
        .into_par_iter()
        .map(|t| {
            let graph_seed = stream.child_seed(t);
            let g = source.load(graph_seed)?;
            let d = g.require_regular()?;
            let s = spectrum(&g);
            Ok((graph_seed, g.order(), d, s.lambda1(), s.lambda2()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (_, n, d, _, _) = draws[0];
    let bound = (2.0 + a.slack) * ((d as f64) - 1.0).sqrt();
    let columns = if a.per_trial {
        "trial,graph_seed,n,d,lambda1,lambda2,bound,below"
    } else {
        "n,d,trials,bound,below,frequency,sigma,lambda2_mean,lambda2_max"
    };
    let mut report = Report::new("spectra", columns);
    report
        .config("graph", source.describe())
        .config("trials", trials)
        .config("slack", a.slack)
        .config("seed", ctx.seed());
    let hits = draws.iter().filter(|x| x.4 <= bound).count() as u64;
    if a.per_trial {
        for (t, (graph_seed, n, d, l1, l2)) in draws.iter().enumerate() {
            report.row(format!("{t},{graph_seed},{n},{d},{l1:?},{l2:?},{bound:?},{}", *l2 <= bound));
        }
    } else {
        let freq = Frequency { hits, trials };
        let mean = draws.iter().map(|x| x.4).sum::<f64>() / trials as f64;
        let max = draws.iter().map(|x| x.4).fold(f64::NEG_INFINITY, f64::max);
        report.row(format!("{n},{d},{trials},{bound:?},{hits},{:?},{:?},{mean:?},{max:?}", freq.value(), freq.sigma()));
    }
    if let Some(path) = &a.svg {
        let points: Vec<(f64, f64)> = draws.iter().enumerate().map(|(t, x)| (t as f64, x.4)).collect();
        let threshold = vec![(0.0, bound), ((trials - 1) as f64, bound)];
        let series = [
            Series { name: "lambda2".into(), points },
            Series { name: "threshold".into(), points: threshold },
        ];
        write_output(Some(path), &emit_svg("Second eigenvalue per draw", "draw", "lambda2", &report.config_line(), &series)?)?;
    }
    Ok(Output::Report(report))
}

#[derive(Debug, Args)]
pub struct GenGraphArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
}

fn file_header(command: &str, what: &str, seed: u64) -> String {
    format!("# nlgap {} {command}\n# source={what} seed={seed}\n", env!("CARGO_PKG_VERSION"))
}

pub fn gen_graph(ctx: &Ctx, a: GenGraphArgs) -> Result<Output> {
    let source = a.graph.source()?;
    let g = source.load(ctx.seed())?;
    Ok(Output::Text(file_header("gen-graph", &source.describe(), ctx.seed()) + &g.to_text()))
}

#[derive(Debug, Args)]
pub struct GenMetricArgs {
    /// uniform:N, line:x1,x2,.., grid:K,S, random:N, or path (needs a graph).
    #[arg(long)]
    pub metric: String,
    #[command(flatten)]
    pub graph: GraphArgs,
}

pub fn gen_metric(ctx: &Ctx, a: GenMetricArgs) -> Result<Output> {
    let g = if a.graph.is_given() { Some(a.graph.source()?.load(ctx.seed())?) } else { None };
    let m = load_metric(&a.metric, g.as_ref(), ctx.seed())?;
    Ok(Output::Text(file_header("gen-metric", &a.metric, ctx.seed()) + &m.to_text()?))
}
