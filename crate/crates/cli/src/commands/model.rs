//! `model`: Monte Carlo checks of the random graph model lemmas.
//!
//! Parameters come from a manifest file, command-line options, or both
//! (options win). The resolved manifest is echoed in the report header.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, ValueEnum};
use nlgap::models::{
    matching_avoidance_mc, model_distribution_test, restriction_concentration_mc, typical_diagnostic, Manifest,
};
use nlgap::rng::SeedStream;
use nlgap::{FiniteMetric, VertexMap};
use rand::seq::index;

use crate::error::{CliError, Result};
use crate::report::{read_input, Report};
use crate::{Ctx, Output};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    /// Perfect matchings avoiding most of a dense pair set.
    Matchings,
    /// Concentration surviving restriction to a random k-set.
    Restriction,
    /// Law of the planted model against the uniform law.
    Distribution,
    /// Sizes of the typical vertex sets.
    Typical,
}

impl Lemma {
    fn name(self) -> &'static str {
        match self {
            Lemma::Matchings => "matchings",
            Lemma::Restriction => "restriction",
            Lemma::Distribution => "distribution",
            Lemma::Typical => "typical",
        }
    }
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub lemma: Option<Lemma>,
    /// `key=value` file; keys match the long option names (`lemma` included).
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    #[arg(long, visible_alias = "l")]
    pub ell: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    /// Subset size (restriction).
    #[arg(long)]
    pub k: Option<usize>,
    /// Seed radius (typical).
    #[arg(long)]
    pub m: Option<usize>,
    /// Constant K (typical).
    #[arg(long = "big-k")]
    pub big_k: Option<f64>,
    /// Target size of the uniform metric (restriction).
    #[arg(long)]
    pub points: Option<usize>,
}

fn resolve(ctx: &Ctx, a: &ModelArgs) -> Result<Manifest> {
    let mut man = match &a.manifest {
        Some(path) => read_input(path)?
            .parse::<Manifest>()
            .map_err(|e| CliError::Parse { path: path.clone(), message: e.to_string() })?,
        None => Manifest::new(),
    };
    if let Some(l) = a.lemma {
        man.set("lemma", l.name());
    }
    let opts: [(&str, Option<String>); 10] = [
        ("ell", a.ell.map(|v| v.to_string())),
        ("eps", a.eps.map(|v| v.to_string())),
        ("c", a.c.map(|v| v.to_string())),
        ("trials", a.trials.map(|v| v.to_string())),
        ("n", a.n.map(|v| v.to_string())),
        ("d", a.d.map(|v| v.to_string())),
        ("k", a.k.map(|v| v.to_string())),
        ("m", a.m.map(|v| v.to_string())),
        ("K", a.big_k.map(|v| v.to_string())),
        ("points", a.points.map(|v| v.to_string())),
    ];
    for (key, value) in opts {
        if let Some(v) = value {
            man.set(key, v);
        }
    }
    if let Some(seed) = ctx.seed {
        man.set("seed", seed);
    }
    Ok(man)
}

pub fn model(ctx: &Ctx, a: ModelArgs) -> Result<Output> {
    let mut man = resolve(ctx, &a)?;
    let lemma: String = man.require("lemma")?;
    let lemma = Lemma::from_str(&lemma, false)
        .map_err(|_| CliError::Usage(format!("unknown lemma {lemma:?}; expected matchings, restriction, distribution or typical")))?;
    let seed: u64 = man.get_or("seed", 0)?;
    let report = match lemma {
        Lemma::Matchings => matchings(&mut man, seed)?,
        Lemma::Restriction => restriction(&mut man, seed)?,
        Lemma::Distribution => distribution(&mut man, seed)?,
        Lemma::Typical => typical(&mut man, seed)?,
    };
    Ok(Output::Report(report))
}

/// Reads `key` with a default and records the value used.
fn param<T: std::str::FromStr + std::fmt::Display + Clone>(man: &mut Manifest, key: &str, default: T) -> Result<T> {
    let v = man.get_or(key, default)?;
    man.set(key, v.clone());
    Ok(v)
}

fn echo(report: &mut Report, man: &Manifest) {
    for key in man.keys() {
        report.config(key, man.raw(key).unwrap_or_default());
    }
}

fn matchings(man: &mut Manifest, seed: u64) -> Result<Report> {
    let ell = param(man, "ell", 20usize)?;
    let eps = param(man, "eps", 0.2f64)?;
    let c = param(man, "c", 0.1f64)?;
    let trials = param(man, "trials", 100_000u64)?;
    // Y: all pairs of 0..ℓ except ⌊ε·C(ℓ, 2)⌋ random ones.
    let all: Vec<(usize, usize)> = (0..ell).flat_map(|a| (a + 1..ell).map(move |b| (a, b))).collect();
    let stream = SeedStream::new(seed);
    let mut dropped = index::sample(&mut stream.rng(0), all.len(), (eps * all.len() as f64) as usize).into_vec();
    dropped.sort_unstable();
    let y: Vec<(usize, usize)> =
        all.iter().enumerate().filter(|(i, _)| dropped.binary_search(i).is_err()).map(|(_, &p)| p).collect();
    let mc = matching_avoidance_mc(ell, &y, c, eps, trials, stream.child_seed(1))?;
    let mut report = Report::new("model", "lemma,ell,eps,c,y_pairs,trials,hits,empirical,sigma,bound,consistent");
    echo(&mut report, man);
    report.row(format!(
        "matchings,{ell},{eps},{c},{},{trials},{},{:?},{:?},{:?},{}",
        y.len(),
        mc.frequency.hits,
        mc.frequency.value(),
        mc.frequency.sigma(),
        mc.bound,
        mc.consistent()
    ));
    report.fail_if(!mc.consistent());
    Ok(report)
}

fn restriction(man: &mut Manifest, seed: u64) -> Result<Report> {
    let n = param(man, "n", 10_000usize)?;
    let points = param(man, "points", 64usize)?;
    let eps = param(man, "eps", 1.0 / 31.0)?;
    let k = param(man, "k", 62usize)?;
    let trials = param(man, "trials", 10_000u64)?;
    let target = Arc::new(FiniteMetric::uniform(points)?);
    let f = VertexMap::new(target, (0..n).map(|v| v % points).collect())?;
    let r = restriction_concentration_mc(&f, eps, k, trials, seed)?;
    let mut report =
        Report::new("model", "lemma,n,points,eps,k,trials,hypothesis_met,ave,quantile,hits,empirical,bound,holds");
    echo(&mut report, man);
    report.row(format!(
        "restriction,{n},{points},{eps},{k},{trials},{},{:?},{:?},{},{:?},{:?},{}",
        r.hypothesis_met,
        r.ave,
        r.quantile,
        r.frequency.hits,
        r.frequency.value(),
        r.bound,
        r.holds()
    ));
    report.fail_if(r.hypothesis_met && !r.holds());
    Ok(report)
}

/// Significance level below which the distribution test fails.
const P_VALUE_FLOOR: f64 = 1e-3;

fn distribution(man: &mut Manifest, seed: u64) -> Result<Report> {
    let n = param(man, "n", 6usize)?;
    let d = param(man, "d", 3usize)?;
    let ell = param(man, "ell", 1usize)?;
    let trials = param(man, "trials", 100_000u64)?;
    let t = model_distribution_test(n, d, ell, trials, seed)?;
    let mut report = Report::new("model", "lemma,n,d,ell,draws,outcomes,chi2,dof,p_value");
    echo(&mut report, man);
    report.row(format!(
        "distribution,{n},{d},{ell},{trials},{},{:?},{},{:?}",
        t.outcomes, t.chi_square.statistic, t.chi_square.dof, t.chi_square.p_value
    ));
    report.fail_if(t.chi_square.p_value <= P_VALUE_FLOOR);
    Ok(report)
}

fn typical(man: &mut Manifest, seed: u64) -> Result<Report> {
    let n = param(man, "n", 1000usize)?;
    let d = param(man, "d", 3usize)?;
    let k = param(man, "K", 20.0f64)?;
    let m = param(man, "m", 2usize)?;
    let trials = param(man, "trials", 20u64)?;
    let t = typical_diagnostic(n, d, k, m, trials, seed)?;
    let mut report = Report::new("model", "lemma,n,d,K,m,trials,ell0,k0,k0_capped,f1,f2,f3,all,reference");
    echo(&mut report, man);
    report.row(format!(
        "typical,{n},{d},{k},{m},{trials},{},{},{},{:?},{:?},{:?},{:?},{:?}",
        t.ell0, t.k0, t.k0_capped, t.f1, t.f2, t.f3, t.all, t.reference
    ));
    Ok(report)
}
