//! Graph families, corpora, theorem runs and sweeps, and CSV/JSON reports.

mod families;
mod output;
mod run;
mod scenarios;

pub use families::{generate_family, standard_corpus, CorpusConfig, CorpusEntry, Family, FamilySpec, MAX_RETRIES};
pub use output::{write_csv, write_json, CSV_HEADER};
pub use run::{
    run_theorem, run_theorem_with, sweep, sweep_instances, RunOptions, Summary, SweepConfig, TheoremReport,
};
pub use scenarios::{pair_scenarios, PairScenario};

use thiserror::Error;

use crate::graph::GraphError;
use crate::machinery::MachineryError;
use crate::solvers::SolverError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("bad family spec {0}")]
    Spec(String),
    #[error("no graph without isolated vertices after {MAX_RETRIES} draws for {0}")]
    RetriesExhausted(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Machinery(#[from] MachineryError),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
