//! `witness`, `jls-embed` and `distort`.

use std::path::PathBuf;
use std::sync::Arc;

use clap::Args;
use nlgap::embeddings::{default_delta, embedding_distortion, jls_embedding, witness_map, EmbeddingReport};
use nlgap::graph::DistanceTable;
use nlgap::poincare::{gamma_of_map, ImageDistances};
use nlgap::rng::SeedStream;
use nlgap::Graph;
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::input::{load_map, load_metric, GraphArgs, GraphSource};
use crate::report::{write_output, Report};
use crate::svg::{emit_svg, Series};
use crate::{Ctx, Output};

#[derive(Debug, Args)]
pub struct WitnessArgs {
    /// A single graph source; without it, random regular graphs of each --sizes entry.
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, default_value = "64,256,1024", value_delimiter = ',')]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    /// Graphs per size (random sources only).
    #[arg(long, default_value_t = 10)]
    pub trials: u64,
    /// Base-10 logarithm of the number of target points.
    #[arg(long, default_value_t = 100.0)]
    pub log10_points: f64,
    /// Coordinates of the first map.
    #[arg(long)]
    pub map_out: Option<PathBuf>,
    /// Chart of the median ratio against ln n.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

/// Tries child seeds until the drawn graph is connected.
fn connected_draw(source: &GraphSource, stream: SeedStream) -> Result<(Graph, u64)> {
    for attempt in 0..1000 {
        let seed = stream.child_seed(attempt);
        let g = source.load(seed)?;
        if g.is_connected() {
            return Ok((g, seed));
        }
    }
    Err(CliError::Usage(format!("no connected draw of {} in 1000 attempts", source.describe())))
}

fn median(sorted: &[f64]) -> f64 {
    let k = sorted.len();
    if k % 2 == 1 {
        sorted[k / 2]
    } else {
        (sorted[k / 2 - 1] + sorted[k / 2]) / 2.0
    }
}

pub fn witness(ctx: &Ctx, a: WitnessArgs) -> Result<Output> {
    let ln_points = a.log10_points * std::f64::consts::LN_10;
    let sources: Vec<GraphSource> = if a.graph.is_given() {
        vec![a.graph.source()?]
    } else {
        a.sizes.iter().map(|&n| GraphSource::Regular { n, d: a.degree }).collect()
    };
    let mut report = Report::new("witness", "graph,n,trial,graph_seed,k,s,s0,r0,ave,dirichlet,ratio,max_edge_cost");
    report
        .config("graphs", sources.iter().map(GraphSource::describe).collect::<Vec<_>>().join(" "))
        .config("trials", a.trials)
        .config("log10_points", a.log10_points)
        .config("seed", ctx.seed());

    let root = SeedStream::new(ctx.seed());
    let jobs: Vec<(usize, u64)> = sources
        .iter()
        .enumerate()
        .flat_map(|(i, s)| (0..if s.is_random() { a.trials.max(1) } else { 1 }).map(move |t| (i, t)))
        .collect();
    let results = jobs
        .par_iter()
        .map(|&(i, t)| {
            let (g, graph_seed) = connected_draw(&sources[i], root.child(i as u64).child(t))?;
            let (f, params) = witness_map(&g, ln_points)?;
            let stats = gamma_of_map(&g, &f, 1.0)?;
            let max_edge = g.edges().iter().map(|&(u, v)| f.image_distance(u, v)).fold(0.0, f64::max);
            Ok((i, t, g.order(), graph_seed, f, params, stats, max_edge))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut per_source: Vec<Vec<f64>> = vec![Vec::new(); sources.len()];
    let mut orders = vec![0usize; sources.len()];
    let mut bad_edges = false;
    for (idx, (i, t, n, graph_seed, f, p, stats, max_edge)) in results.iter().enumerate() {
        let ratio = stats.ratio.unwrap_or(0.0);
        report.row(format!(
            "{},{n},{t},{graph_seed},{},{},{},{},{:?},{:?},{ratio:?},{max_edge:?}",
            super::csv_label(&sources[*i].describe()),
            p.k,
            p.s,
            p.s0,
            p.r0,
            stats.ave,
            stats.dirichlet
        ));
        per_source[*i].push(ratio);
        orders[*i] = *n;
        bad_edges |= *max_edge > 1.0;
        if idx == 0 {
            if let Some(path) = &a.map_out {
                write_output(Some(path), &f.to_text())?;
            }
        }
    }
    let mut curve = Vec::new();
    for (i, ratios) in per_source.iter_mut().enumerate() {
        ratios.sort_by(f64::total_cmp);
        let med = median(ratios);
        report.note(format!("median {} n={} ratio={med:?}", sources[i].describe(), orders[i]));
        curve.push(((orders[i] as f64).ln(), med));
    }
    if let Some(path) = &a.svg {
        let series = [Series { name: "median ratio".into(), points: curve }];
        let svg = emit_svg("Witness map ratio", "ln n", "ave / dirichlet", &report.config_line(), &series)?;
        write_output(Some(path), &svg)?;
    }
    report.fail_if(bad_edges);
    Ok(Output::Report(report))
}

#[derive(Debug, Args)]
pub struct JlsArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Target distortion D.
    #[arg(long, default_value_t = 3.0)]
    pub distortion: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c1: f64,
    /// Coordinate range; defaults to ⌊500 ln n⌋.
    #[arg(long)]
    pub delta: Option<u64>,
    /// Retries per trial.
    #[arg(long, default_value_t = 50)]
    pub attempts: u32,
    #[arg(long, default_value_t = 1)]
    pub trials: u64,
    /// Fraction of successful trials required for exit status 0.
    #[arg(long, default_value_t = 0.9)]
    pub min_success: f64,
    #[arg(long)]
    pub map_out: Option<PathBuf>,
}

pub fn jls(ctx: &Ctx, a: JlsArgs) -> Result<Output> {
    let source = a.graph.source()?;
    let g = source.load(ctx.seed())?;
    let delta = a.delta.unwrap_or_else(|| default_delta(g.order()));
    let mut report = Report::new("jls-embed", "trial,k,m,r,delta,attempts,success,lip,colip,distortion");
    report
        .config("graph", source.describe())
        .config("distortion", a.distortion)
        .config("c1", a.c1)
        .config("delta", delta)
        .config("attempts", a.attempts)
        .config("trials", a.trials)
        .config("seed", ctx.seed());
    let table = DistanceTable::new(&g);
    let stream = SeedStream::new(ctx.seed());
    let outcomes = (0..a.trials)
        .into_par_iter()
        .map(|t| Ok(jls_embedding(&g, a.distortion, a.c1, delta, stream.child_seed(t), a.attempts)?))
        .collect::<Result<Vec<_>>>()?;
    let mut successes = 0u64;
    let mut lipschitz = true;
    for (t, o) in outcomes.iter().enumerate() {
        let p = &o.params;
        report.row(format!(
            "{t},{},{},{},{delta},{},{},{}",
            p.k,
            p.m,
            p.r,
            o.attempts,
            o.success,
            o.report.csv_row()
        ));
        successes += u64::from(o.success);
        let n = g.order();
        lipschitz &= (0..n).all(|v| (v + 1..n).all(|u| o.map.image_distance(v, u) <= table.get(v, u) as f64));
    }
    if let (Some(path), Some(first)) = (&a.map_out, outcomes.first()) {
        write_output(Some(path), &first.map.to_text())?;
    }
    let rate = if a.trials == 0 { 0.0 } else { successes as f64 / a.trials as f64 };
    report.note(format!("success_rate={rate:?} lipschitz={lipschitz}"));
    report.fail_if(rate < a.min_success || !lipschitz);
    Ok(Output::Report(report))
}

#[derive(Debug, Args)]
pub struct DistortArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long)]
    pub metric: String,
    /// Map file: `n`, then lines `vertex point`.
    #[arg(long)]
    pub map: PathBuf,
}

pub fn distort(ctx: &Ctx, a: DistortArgs) -> Result<Output> {
    let source = a.graph.source()?;
    let g = source.load(ctx.seed())?;
    let m = Arc::new(load_metric(&a.metric, Some(&g), ctx.seed())?);
    let f = load_map(&a.map, m.clone())?;
    let mut report = Report::new("distort", format!("n,N,{}", EmbeddingReport::CSV_HEADER));
    report.config("graph", source.describe()).config("metric", &a.metric).config("map", a.map.display());
    let r = embedding_distortion(&g, &f)?;
    report.row(format!("{},{},{}", g.order(), m.len(), r.csv_row()));
    Ok(Output::Report(report))
}
