//! Command-line front end. [`run`] returns the process status: 0 on success,
//! 1 when a bound, claim, or certificate check fails, 2 on usage or input
//! errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::graph::{parse_edge_list, Graph, ProductGraph, VertexSet};
use crate::harness::{
    run_theorem_with, standard_corpus, sweep, write_csv, write_json, CorpusConfig, FamilySpec, RunOptions,
    SweepConfig, TheoremReport,
};
use crate::machinery::{MatchingStrategy, TheoremId};
use crate::solvers::{
    domination_number, is_dominating, is_paired_dominating, is_total_dominating, DominationCertificate,
    DominationKind, SolverError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "domlab", version, about = "Domination numbers of graphs and checks of product bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact domination number with a lexicographically smallest certificate.
    Solve {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Edge-list file or family spec such as `path:4`.
        #[arg(long)]
        graph: String,
    },
    /// Cartesian product of the factors, written as an edge list.
    Product {
        #[arg(long, num_args = 2.., required = true)]
        factors: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks one product bound (1 to 5) with every intermediate step.
    Verify {
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long, num_args = 1.., required = true)]
        factors: Vec<String>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
        /// List every checked fact, not just failures.
        #[arg(long)]
        verbose: bool,
        #[arg(long, value_enum, default_value_t = MatchingArg::Maximum)]
        matching: MatchingArg,
    },
    /// Checks one bound over all factor tuples of the standard corpus.
    Sweep {
        #[arg(long)]
        theorem: TheoremId,
        /// Factors per instance.
        #[arg(long, default_value_t = 2)]
        arity: usize,
        /// Corpus seed.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Largest product order; defaults to 30, or 24 for the paired bounds.
        #[arg(long)]
        max_order: Option<usize>,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a JSON report with every ledger.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Fill the `millis` column.
        #[arg(long)]
        timing: bool,
        /// Record `gamma(G)gamma(H) > gamma(G x H)` as a finding.
        #[arg(long)]
        vizing: bool,
        /// Largest order of the path, cycle, complete, and star graphs.
        #[arg(long, default_value_t = 8)]
        family_max_order: usize,
        #[arg(long, default_value_t = 200)]
        random_count: usize,
        #[arg(long, default_value_t = 9)]
        random_max_order: usize,
        #[arg(long, value_enum, default_value_t = MatchingArg::Maximum)]
        matching: MatchingArg,
    },
    /// Checks a user-supplied set against the domination predicates.
    CheckCertificate {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        graph: String,
        /// Comma-separated vertex indices.
        #[arg(long, allow_hyphen_values = true)]
        set: String,
        /// Pairs `a-b,c-d` for a paired set; searched for when absent.
        #[arg(long)]
        pairs: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Plain,
    Total,
    Paired,
}

impl From<KindArg> for DominationKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Plain => DominationKind::Plain,
            KindArg::Total => DominationKind::Total,
            KindArg::Paired => DominationKind::Paired,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MatchingArg {
    Maximum,
    Greedy,
}

impl From<MatchingArg> for MatchingStrategy {
    fn from(m: MatchingArg) -> Self {
        match m {
            MatchingArg::Maximum => MatchingStrategy::Maximum,
            MatchingArg::Greedy => MatchingStrategy::Greedy,
        }
    }
}

/// A one-line diagnostic plus the status it maps to.
struct Failure(i32, String);

fn usage(message: impl ToString) -> Failure {
    Failure(EXIT_USAGE, message.to_string())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Solve { kind, graph } => solve(kind.into(), &load_graph(&graph)?, out),
        Command::Product { factors, out: path } => {
            let factors = factors.iter().map(|f| load_graph(f)).collect::<Result<Vec<_>, _>>()?;
            let product = ProductGraph::new(factors).map_err(usage)?;
            let text = product.graph().to_edge_list();
            match path {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
                    emit(
                        out,
                        format!(
                            "wrote {} ({} vertices, {} edges) to {}",
                            product.graph().label(),
                            product.graph().order(),
                            product.graph().edge_count(),
                            path.display()
                        ),
                    )?;
                }
                None => out.write_all(text.as_bytes()).map_err(usage)?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            theorem,
            factors,
            json,
            verbose,
            matching,
        } => {
            let factors = factors.iter().map(|f| load_graph(f)).collect::<Result<Vec<_>, _>>()?;
            let options = RunOptions {
                strategy: matching.into(),
                vizing: false,
            };
            let report = run_theorem_with(theorem, &factors, options).map_err(usage)?;
            if json {
                let text = serde_json::to_string_pretty(&report).map_err(usage)?;
                emit(out, text)?;
            } else {
                print_report(out, &report, verbose)?;
            }
            Ok(if report.pass { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Sweep {
            theorem,
            arity,
            seed,
            max_order,
            jobs,
            out: csv_path,
            json,
            timing,
            vizing,
            family_max_order,
            random_count,
            random_max_order,
            matching,
        } => {
            let corpus_config = CorpusConfig {
                seed,
                family_max_order,
                random_count,
                random_max_order,
                ..CorpusConfig::default()
            };
            if random_max_order < corpus_config.random_min_order && random_count > 0 {
                return Err(usage("--random-max-order must be at least 2"));
            }
            let corpus: Vec<Graph> = standard_corpus(&corpus_config)
                .map_err(usage)?
                .into_iter()
                .map(|e| e.graph)
                .collect();
            let config = SweepConfig {
                theorem,
                arity,
                max_product_order: max_order.unwrap_or_else(|| SweepConfig::default_cap(theorem)),
                jobs,
                options: RunOptions {
                    strategy: matching.into(),
                    vizing,
                },
            };
            let (reports, summary) = sweep(&config, &corpus).map_err(usage)?;
            let summary_out: &mut dyn Write = match &csv_path {
                Some(path) => {
                    let file = create(path)?;
                    write_csv(BufWriter::new(file), &reports, timing).map_err(usage)?;
                    out
                }
                None => {
                    write_csv(&mut *out, &reports, timing).map_err(usage)?;
                    err
                }
            };
            if let Some(path) = &json {
                write_json(BufWriter::new(create(path)?), &reports, &summary).map_err(usage)?;
            }
            let ratio = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.4}"));
            emit(
                summary_out,
                format!(
                    "{theorem}: {} instances, {} passed, {} failed, left/right min {} mean {} max {}, {} findings",
                    summary.instances,
                    summary.passed,
                    summary.failed,
                    ratio(summary.min_slack),
                    ratio(summary.mean_slack),
                    ratio(summary.max_slack),
                    summary.findings
                ),
            )?;
            for r in reports.iter().filter(|r| !r.pass || !r.findings.is_empty()) {
                let status = if r.pass { "finding" } else { "FAIL" };
                emit(
                    summary_out,
                    format!("{status}: {} {}", r.factors.join(" x "), r.findings.join("; ")),
                )?;
            }
            Ok(if summary.all_pass() { EXIT_OK } else { EXIT_FAILED })
        }
        Command::CheckCertificate { kind, graph, set, pairs } => {
            check_certificate(kind.into(), &load_graph(&graph)?, &set, pairs.as_deref(), out)
        }
    }
}

fn emit(out: &mut dyn Write, line: impl AsRef<str>) -> Result<(), Failure> {
    writeln!(out, "{}", line.as_ref()).map_err(usage)
}

fn create(path: &Path) -> Result<File, Failure> {
    File::create(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Reads an edge-list file, or builds a family graph from a spec such as
/// `cycle:5` when no such file exists.
fn load_graph(arg: &str) -> Result<Graph, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let file = File::open(path).map_err(|e| usage(format!("{arg}: {e}")))?;
        let g = parse_edge_list(BufReader::new(file)).map_err(|e| usage(format!("{arg}: {e}")))?;
        return Ok(match g.name() {
            Some(_) => g,
            None => {
                let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
                match stem {
                    Some(stem) => g.with_name(stem),
                    None => g,
                }
            }
        });
    }
    if arg.contains(':') {
        let spec: FamilySpec = arg.parse().map_err(usage)?;
        return crate::harness::generate_family(&spec).map_err(usage);
    }
    Err(usage(format!("{arg}: no such file, and not a family spec like path:4")))
}

fn solve(kind: DominationKind, g: &Graph, out: &mut dyn Write) -> Result<i32, Failure> {
    let r = domination_number(g, kind).map_err(usage)?;
    let mut line = format!("{} = {}; set = {}", kind.symbol(), r.number, r.certificate.members());
    if kind == DominationKind::Paired {
        line.push_str(&format!("; pairs = {}", format_pairs(r.certificate.pairing())));
    }
    emit(out, line)?;
    Ok(EXIT_OK)
}

fn format_pairs(pairs: &[(usize, usize)]) -> String {
    pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(",")
}

fn parse_set(g: &Graph, text: &str) -> Result<VertexSet, Failure> {
    let mut set = VertexSet::new(g.order());
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let v: usize = item.parse().map_err(|_| usage(format!("{item:?} is not a vertex index")))?;
        if v >= g.order() {
            return Err(usage(format!("vertex {v} out of range (order {})", g.order())));
        }
        set.insert(v);
    }
    Ok(set)
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (a, b) = item
                .split_once('-')
                .ok_or_else(|| usage(format!("{item:?} is not a pair a-b")))?;
            let num = |s: &str| s.trim().parse::<usize>().map_err(|_| usage(format!("{item:?} is not a pair a-b")));
            Ok((num(a)?, num(b)?))
        })
        .collect()
}

fn check_certificate(
    kind: DominationKind,
    g: &Graph,
    set: &str,
    pairs: Option<&str>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let members = parse_set(g, set)?;
    if pairs.is_some() && kind != DominationKind::Paired {
        return Err(usage("--pairs only applies to --kind paired"));
    }
    let verdict: Result<Option<Vec<(usize, usize)>>, String> = match kind {
        DominationKind::Plain => is_dominating(g, &members).then_some(None).ok_or("not dominating".into()),
        DominationKind::Total => is_total_dominating(g, &members)
            .then_some(None)
            .ok_or("not total dominating".into()),
        DominationKind::Paired => match pairs {
            Some(text) => {
                let pairs = parse_pairs(text)?;
                match DominationCertificate::new(g, kind, members.clone(), Some(pairs)) {
                    Ok(c) => Ok(Some(c.pairing().to_vec())),
                    Err(SolverError::InvalidCertificate { reason, .. }) => Err(reason),
                    Err(e) => Err(e.to_string()),
                }
            }
            None => match is_paired_dominating(g, &members) {
                (true, pairing) => Ok(pairing),
                (false, _) if !is_dominating(g, &members) => Err("not dominating".into()),
                (false, _) => Err("induced subgraph has no perfect matching".into()),
            },
        },
    };
    match verdict {
        Ok(pairing) => {
            let mut line = format!("valid {kind} dominating set {members} of size {}", members.len());
            if let Some(p) = pairing {
                line.push_str(&format!("; pairs = {}", format_pairs(&p)));
            }
            emit(out, line)?;
            Ok(EXIT_OK)
        }
        Err(reason) => {
            emit(out, format!("invalid {kind} dominating set {members}: {reason}"))?;
            Ok(EXIT_FAILED)
        }
    }
}

fn print_report(out: &mut dyn Write, r: &TheoremReport, verbose: bool) -> Result<(), Failure> {
    emit(out, format!("{} on {}", r.theorem, r.factors.join(" x ")))?;
    emit(out, format!("  left  = {}", r.left))?;
    emit(out, format!("  right = {} * |D| = {} * {} = {}", r.constant, r.constant, r.d_size, r.right))?;
    emit(
        out,
        format!("  facts: {} checked, {} failed", r.ledger.len(), r.claims_failed),
    )?;
    for fact in r.ledger.facts().iter().filter(|f| verbose || !f.holds) {
        emit(out, format!("  {fact}"))?;
    }
    for finding in &r.findings {
        emit(out, format!("  finding: {finding}"))?;
    }
    emit(out, if r.pass { "PASS" } else { "FAIL" })
}
