//! Errors surfaced by the command-line driver.

use std::path::PathBuf;

use nlgap::embeddings::EmbeddingsError;
use nlgap::extrapolation::ExtrapolationError;
use nlgap::models::ModelsError;
use nlgap::poincare::PoincareError;
use nlgap::{GraphError, MetricError};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },

    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },

    #[error("invalid {what} {value:?}: {hint}")]
    Spec { what: &'static str, value: String, hint: String },

    #[error("{0}")]
    Usage(String),

    #[error("NLGAP_THREADS={value:?}: {message}")]
    Threads { value: String, message: String },

    #[error("chart needs at least one non-empty series")]
    EmptySeries,

    #[error(transparent)]
    Graph(#[from] GraphError),

    #[error(transparent)]
    Metric(#[from] MetricError),

    #[error(transparent)]
    Poincare(#[from] PoincareError),

    #[error(transparent)]
    Extrapolation(#[from] ExtrapolationError),

    #[error(transparent)]
    Embeddings(#[from] EmbeddingsError),

    #[error(transparent)]
    Models(#[from] ModelsError),
}

pub type Result<T> = std::result::Result<T, CliError>;
