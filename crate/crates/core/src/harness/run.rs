use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::HarnessError;
use crate::graph::{Graph, ProductGraph};
use crate::machinery::{verify_theorem_with, Ledger, MatchingStrategy, TheoremId};
use crate::solvers::{domination_number, DominationKind};

/// Result of one theorem check on one tuple of factors.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub factors: Vec<String>,
    pub left: usize,
    pub right: usize,
    pub constant: usize,
    pub d_size: usize,
    /// `left / right`; at most 1 on a passing row.
    pub slack: f64,
    pub pass: bool,
    pub claims_failed: usize,
    pub millis: f64,
    pub ledger: Ledger,
    /// Observations that do not affect `pass`, such as errors or a failed
    /// `γ(G)γ(H) <= γ(G□H)` check.
    pub findings: Vec<String>,
}

impl TheoremReport {
    fn failed(theorem: TheoremId, factors: &[Graph], error: String) -> Self {
        Self {
            theorem,
            factors: factors.iter().map(Graph::label).collect(),
            left: 0,
            right: 0,
            constant: theorem.constant(factors.len().max(2)),
            d_size: 0,
            slack: f64::NAN,
            pass: false,
            claims_failed: 0,
            millis: 0.0,
            ledger: Ledger::new(),
            findings: vec![format!("error: {error}")],
        }
    }
}

/// Options for [`run_theorem_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RunOptions {
    pub strategy: MatchingStrategy,
    /// Also compare `γ(G)γ(H)` with `γ(G□H)` on two-factor runs.
    pub vizing: bool,
}

pub fn run_theorem(theorem: TheoremId, factors: &[Graph]) -> Result<TheoremReport, HarnessError> {
    run_theorem_with(theorem, factors, RunOptions::default())
}

pub fn run_theorem_with(
    theorem: TheoremId,
    factors: &[Graph],
    options: RunOptions,
) -> Result<TheoremReport, HarnessError> {
    let start = Instant::now();
    let v = verify_theorem_with(theorem, factors, options.strategy)?;
    let mut findings = Vec::new();
    if options.vizing && factors.len() == 2 {
        findings.extend(vizing_finding(&factors[0], &factors[1])?);
    }
    Ok(TheoremReport {
        theorem,
        pass: v.pass(),
        claims_failed: v.ledger.failure_count(),
        slack: v.left as f64 / v.right as f64,
        factors: v.factors,
        left: v.left,
        right: v.right,
        constant: v.constant,
        d_size: v.d_size,
        millis: start.elapsed().as_secs_f64() * 1000.0,
        ledger: v.ledger,
        findings,
    })
}

fn vizing_finding(g: &Graph, h: &Graph) -> Result<Option<String>, HarnessError> {
    let plain = |x: &Graph| domination_number(x, DominationKind::Plain).map(|r| r.number);
    let product = ProductGraph::new(vec![g.clone(), h.clone()])?;
    let (a, b, c) = (plain(g)?, plain(h)?, plain(product.graph())?);
    Ok((a * b > c).then(|| format!("gamma(G)gamma(H) = {} exceeds gamma(G x H) = {c}", a * b)))
}

/// Which factor tuples to run and how.
#[derive(Debug, Clone, Serialize)]
pub struct SweepConfig {
    pub theorem: TheoremId,
    /// Factors per instance.
    pub arity: usize,
    /// Largest product order to include.
    pub max_product_order: usize,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
    pub options: RunOptions,
}

impl SweepConfig {
    /// Product order cap used when none is given.
    pub fn default_cap(theorem: TheoremId) -> usize {
        match theorem {
            TheoremId::PairedPaired | TheoremId::PairedProduct => 24,
            _ => 30,
        }
    }

    pub fn new(theorem: TheoremId) -> Self {
        Self {
            theorem,
            arity: 2,
            max_product_order: Self::default_cap(theorem),
            jobs: 0,
            options: RunOptions::default(),
        }
    }
}

/// Aggregate over a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    /// Smallest and mean `left / right` over rows with a finite ratio.
    pub min_slack: Option<f64>,
    pub mean_slack: Option<f64>,
    pub max_slack: Option<f64>,
    pub findings: usize,
}

impl Summary {
    pub fn of(reports: &[TheoremReport]) -> Self {
        let ratios: Vec<f64> = reports.iter().map(|r| r.slack).filter(|s| s.is_finite()).collect();
        let passed = reports.iter().filter(|r| r.pass).count();
        Self {
            instances: reports.len(),
            passed,
            failed: reports.len() - passed,
            min_slack: ratios.iter().copied().reduce(f64::min),
            mean_slack: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
            max_slack: ratios.iter().copied().reduce(f64::max),
            findings: reports.iter().map(|r| r.findings.len()).sum(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

/// Factor tuples (multisets, indices non-decreasing) of `corpus` that the
/// theorem accepts and whose product order is within the cap. Graphs with
/// isolated vertices are skipped.
pub fn sweep_instances(config: &SweepConfig, corpus: &[Graph]) -> Vec<Vec<usize>> {
    let usable: Vec<usize> = (0..corpus.len())
        .filter(|&i| !corpus[i].has_isolated_vertex())
        .collect();
    usable
        .into_iter()
        .combinations_with_replacement(config.arity)
        .filter(|t| t.iter().map(|&i| corpus[i].order()).product::<usize>() <= config.max_product_order)
        .collect()
}

/// Runs every instance of [`sweep_instances`] on a pool of `jobs` threads.
/// Rows come back in instance order whatever the thread count.
pub fn sweep(config: &SweepConfig, corpus: &[Graph]) -> Result<(Vec<TheoremReport>, Summary), HarnessError> {
    config.theorem.check_arity(config.arity)?;
    let instances = sweep_instances(config, corpus);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| HarnessError::Pool(e.to_string()))?;
    let reports: Vec<TheoremReport> = pool.install(|| {
        instances
            .par_iter()
            .map(|t| {
                let factors: Vec<Graph> = t.iter().map(|&i| corpus[i].clone()).collect();
                run_theorem_with(config.theorem, &factors, config.options)
                    .unwrap_or_else(|e| TheoremReport::failed(config.theorem, &factors, e.to_string()))
            })
            .collect()
    });
    let summary = Summary::of(&reports);
    Ok((reports, summary))
}
