//! Graph and metric sources: files or named generators.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Args;
use nlgap::corpus::random_metric;
use nlgap::graph::random_regular;
use nlgap::rng::SeedStream;
use nlgap::{FiniteMetric, Graph, VertexMap};

use crate::error::{CliError, Result};
use crate::report::read_input;

#[derive(Debug, Clone, Args)]
pub struct GraphArgs {
    /// Graph file: `n m` then `m` lines `u v`.
    #[arg(long, conflicts_with_all = ["gen", "gen_regular"])]
    pub graph: Option<PathBuf>,
    /// Named graph: cycle:N, path:N, complete:N, bipartite:A,B, prism:K,
    /// hypercube:K, petersen, regular:N,D.
    #[arg(long, conflicts_with = "gen_regular")]
    pub gen: Option<String>,
    /// Uniform random D-regular graph on N vertices, seeded by --seed.
    #[arg(long, value_name = "N,D")]
    pub gen_regular: Option<String>,
}

/// Where a graph comes from; random sources are re-drawn per seed.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Fixed(String, Graph),
    Regular { n: usize, d: usize },
}

impl GraphArgs {
    pub fn source(&self) -> Result<GraphSource> {
        if let Some(p) = &self.graph {
            return Ok(GraphSource::File(p.clone()));
        }
        if let Some(spec) = &self.gen_regular {
            let [n, d] = numbers::<2>("--gen-regular", spec)?;
            return Ok(GraphSource::Regular { n, d });
        }
        match &self.gen {
            Some(spec) => named_graph(spec),
            None => Err(CliError::Usage("a graph is required: pass --graph, --gen or --gen-regular".into())),
        }
    }

    pub fn is_given(&self) -> bool {
        self.graph.is_some() || self.gen.is_some() || self.gen_regular.is_some()
    }
}

impl GraphSource {
    pub fn describe(&self) -> String {
        match self {
            GraphSource::File(p) => p.display().to_string(),
            GraphSource::Fixed(name, _) => name.clone(),
            GraphSource::Regular { n, d } => format!("regular:{n},{d}"),
        }
    }

    pub fn is_random(&self) -> bool {
        matches!(self, GraphSource::Regular { .. })
    }

    pub fn load(&self, seed: u64) -> Result<Graph> {
        match self {
            GraphSource::File(p) => load_graph(p),
            GraphSource::Fixed(_, g) => Ok(g.clone()),
            GraphSource::Regular { n, d } => Ok(random_regular(*n, *d, seed)?),
        }
    }
}

fn spec_error(what: &'static str, value: &str, hint: &str) -> CliError {
    CliError::Spec { what, value: value.to_string(), hint: hint.to_string() }
}

fn numbers<const K: usize>(what: &'static str, text: &str) -> Result<[usize; K]> {
    let parsed: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| spec_error(what, text, "expected comma-separated non-negative integers"))?;
    parsed.try_into().map_err(|_| spec_error(what, text, &format!("expected {K} comma-separated integers")))
}

pub fn named_graph(spec: &str) -> Result<GraphSource> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let g = match name {
        "cycle" => Graph::cycle(numbers::<1>("graph", args)?[0]),
        "path" => Graph::path(numbers::<1>("graph", args)?[0]),
        "complete" => Graph::complete(numbers::<1>("graph", args)?[0]),
        "prism" => Graph::prism(numbers::<1>("graph", args)?[0]),
        "hypercube" => {
            let k = numbers::<1>("graph", args)?[0];
            if k > 20 {
                return Err(spec_error("graph", spec, "hypercube dimension must be at most 20"));
            }
            Graph::hypercube(k as u32)
        }
        "bipartite" => {
            let [a, b] = numbers::<2>("graph", args)?;
            Graph::complete_bipartite(a, b)
        }
        "petersen" if args.is_empty() => Graph::petersen(),
        "regular" => {
            let [n, d] = numbers::<2>("graph", args)?;
            return Ok(GraphSource::Regular { n, d });
        }
        _ => {
            return Err(spec_error(
                "graph",
                spec,
                "known generators: cycle:N path:N complete:N bipartite:A,B prism:K hypercube:K petersen regular:N,D",
            ))
        }
    };
    Ok(GraphSource::Fixed(spec.to_string(), g))
}

pub fn load_graph(path: &Path) -> Result<Graph> {
    read_input(path)?.parse().map_err(|e: nlgap::GraphError| CliError::Parse { path: path.into(), message: e.to_string() })
}

/// Metric source: `uniform:N` (or `uniformN`), `line:x1,x2,..`, `grid:K,S`,
/// `random:N` (log-uniform distances in [1, 10], seeded), `path` (shortest
/// paths of the input graph) or a metric file.
pub fn load_metric(spec: &str, graph: Option<&Graph>, seed: u64) -> Result<FiniteMetric> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let bad = |hint: &str| spec_error("metric", spec, hint);
    if let Some(count) = name.strip_prefix("uniform") {
        let count = if count.is_empty() { args } else { count };
        let n = count.parse().map_err(|_| bad("expected uniform:N"))?;
        return Ok(FiniteMetric::uniform(n)?);
    }
    match name {
        "line" => {
            let xs: Vec<f64> =
                args.split(',').map(|t| t.trim().parse()).collect::<std::result::Result<_, _>>().map_err(|_| bad("expected line:x1,x2,..."))?;
            Ok(FiniteMetric::line(&xs)?)
        }
        "grid" => {
            let [k, s] = numbers::<2>("metric", args)?;
            let (k, s) = (u32::try_from(k).map_err(|_| bad("k too large"))?, u32::try_from(s).map_err(|_| bad("s too large"))?);
            Ok(FiniteMetric::linf_grid(k, s)?)
        }
        "random" => {
            let n = numbers::<1>("metric", args)?[0];
            if n == 0 {
                return Err(bad("need at least one point"));
            }
            Ok(random_metric(n, &mut SeedStream::new(seed).root_rng()))
        }
        "path" if args.is_empty() => {
            let g = graph.ok_or_else(|| bad("the path metric needs a graph"))?;
            Ok(FiniteMetric::path_metric(g)?)
        }
        _ => {
            let path = Path::new(spec);
            if !path.exists() {
                return Err(CliError::Read {
                    path: path.into(),
                    source: std::io::Error::new(
                        std::io::ErrorKind::NotFound,
                        "no such file (generators: uniform:N line:x,.. grid:K,S random:N path)",
                    ),
                });
            }
            read_input(path)?.parse().map_err(|e: nlgap::MetricError| CliError::Parse { path: path.into(), message: e.to_string() })
        }
    }
}

pub fn load_map(path: &Path, target: Arc<FiniteMetric>) -> Result<VertexMap> {
    VertexMap::parse(&read_input(path)?, target).map_err(|e| CliError::Parse { path: path.into(), message: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_specs() {
        let GraphSource::Fixed(_, g) = named_graph("cycle:5").unwrap() else { panic!() };
        assert_eq!((g.order(), g.edge_count()), (5, 5));
        assert_eq!(named_graph("regular:10,3").unwrap(), GraphSource::Regular { n: 10, d: 3 });
        assert!(named_graph("cycle").is_err());
        assert!(named_graph("wheel:5").is_err());
        assert!(named_graph("petersen").is_ok());
    }

    #[test]
    fn metric_specs() {
        assert_eq!(load_metric("uniform2", None, 0).unwrap(), FiniteMetric::uniform(2).unwrap());
        assert_eq!(load_metric("uniform:3", None, 0).unwrap().len(), 3);
        assert_eq!(load_metric("line:0,1,3", None, 0).unwrap().dist(0, 2), 3.0);
        assert_eq!(load_metric("grid:1,4", None, 0).unwrap().len(), 81);
        assert_eq!(load_metric("random:3", None, 5).unwrap(), load_metric("random:3", None, 5).unwrap());
        assert_eq!(load_metric("path", Some(&Graph::cycle(6)), 0).unwrap().dist(0, 3), 3.0);
        assert!(load_metric("path", None, 0).is_err());
        let err = load_metric("/no/such/metric.txt", None, 0).unwrap_err().to_string();
        assert!(err.contains("/no/such/metric.txt"));
    }
}
