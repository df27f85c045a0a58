use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::HarnessError;
use crate::graph::{named, Graph};

/// Attempts at drawing a random graph without isolated vertices.
pub const MAX_RETRIES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
    Random,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Self::Path => "path",
            Self::Cycle => "cycle",
            Self::Complete => "complete",
            Self::Star => "star",
            Self::Random => "random",
        }
    }
}

/// Recipe for one generated graph.
///
/// Text form: `path:4`, `cycle:5`, `complete:3`, `star:6`, or
/// `random:ORDER:PROBABILITY:SEED` (random graphs always reject isolated
/// vertices unless `no_isolated` is cleared programmatically).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub order: usize,
    pub probability: f64,
    pub seed: u64,
    pub no_isolated: bool,
}

impl FamilySpec {
    pub fn named(family: Family, order: usize) -> Self {
        Self {
            family,
            order,
            probability: 0.0,
            seed: 0,
            no_isolated: false,
        }
    }

    pub fn random(order: usize, probability: f64, seed: u64) -> Self {
        Self {
            family: Family::Random,
            order,
            probability,
            seed,
            no_isolated: true,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Random => write!(f, "random:{}:{}:{}", self.order, self.probability, self.seed),
            family => write!(f, "{}:{}", family.name(), self.order),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| HarnessError::Spec(format!("{s:?}: {why}"));
        let parts: Vec<&str> = s.split(':').collect();
        let order = parts
            .get(1)
            .ok_or_else(|| bad("missing order"))?
            .parse::<usize>()
            .map_err(|_| bad("order is not a number"))?;
        let family = match parts[0] {
            "path" => Family::Path,
            "cycle" => Family::Cycle,
            "complete" => Family::Complete,
            "star" => Family::Star,
            "random" => Family::Random,
            other => return Err(bad(&format!("unknown family {other:?}"))),
        };
        match (family, parts.len()) {
            (Family::Random, 4) => {
                let probability = parts[2].parse::<f64>().map_err(|_| bad("probability is not a number"))?;
                let seed = parts[3].parse::<u64>().map_err(|_| bad("seed is not a number"))?;
                Ok(Self::random(order, probability, seed))
            }
            (Family::Random, _) => Err(bad("expected random:ORDER:PROBABILITY:SEED")),
            (_, 2) => Ok(Self::named(family, order)),
            _ => Err(bad("expected FAMILY:ORDER")),
        }
    }
}

pub fn generate_family(spec: &FamilySpec) -> Result<Graph, HarnessError> {
    let n = spec.order;
    if n == 0 {
        return Err(HarnessError::Spec(format!("{spec}: order must be at least 1")));
    }
    let graph = match spec.family {
        Family::Path => named::path(n),
        Family::Complete => named::complete(n),
        Family::Star => named::star(n),
        Family::Cycle if n < 3 => {
            return Err(HarnessError::Spec(format!("{spec}: a cycle needs at least 3 vertices")))
        }
        Family::Cycle => named::cycle(n),
        Family::Random => random_graph(spec)?,
    };
    if spec.no_isolated && graph.has_isolated_vertex() {
        return Err(HarnessError::Spec(format!("{spec} has an isolated vertex")));
    }
    Ok(graph)
}

fn random_graph(spec: &FamilySpec) -> Result<Graph, HarnessError> {
    let p = spec.probability;
    if !(0.0..=1.0).contains(&p) {
        return Err(HarnessError::Spec(format!("{spec}: probability must lie in [0, 1]")));
    }
    let n = spec.order;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..MAX_RETRIES {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::from_edges(n, edges)?;
        if !spec.no_isolated || !g.has_isolated_vertex() {
            return Ok(g.with_name(spec.to_string()));
        }
    }
    Err(HarnessError::RetriesExhausted(spec.to_string()))
}

/// Shape of the standard graph corpus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorpusConfig {
    pub seed: u64,
    /// Largest order of the path, cycle, complete, and star graphs.
    pub family_max_order: usize,
    pub random_count: usize,
    pub random_min_order: usize,
    pub random_max_order: usize,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            family_max_order: 8,
            random_count: 200,
            random_min_order: 2,
            random_max_order: 9,
        }
    }
}

/// One corpus member and the recipe that produced it.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub spec: FamilySpec,
    pub graph: Graph,
}

/// Paths, complete graphs, and stars of orders `1..=family_max_order`,
/// cycles of orders `3..=family_max_order` (dropping graphs already listed,
/// e.g. `P2 = K2`), then `random_count` random graphs without isolated
/// vertices whose orders, edge probabilities, and seeds are drawn from
/// `seed`.
pub fn standard_corpus(config: &CorpusConfig) -> Result<Vec<CorpusEntry>, HarnessError> {
    let mut out: Vec<CorpusEntry> = Vec::new();
    for n in 1..=config.family_max_order {
        for family in [Family::Path, Family::Cycle, Family::Complete, Family::Star] {
            if family == Family::Cycle && n < 3 {
                continue;
            }
            let spec = FamilySpec::named(family, n);
            let graph = generate_family(&spec)?;
            let seen = out
                .iter()
                .any(|e| e.graph.order() == graph.order() && e.graph.edges().eq(graph.edges()));
            if !seen {
                out.push(CorpusEntry { spec, graph });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for _ in 0..config.random_count {
        let order = rng.gen_range(config.random_min_order..=config.random_max_order);
        // Two decimals keep the textual spec exact.
        let probability = rng.gen_range(20..=80) as f64 / 100.0;
        let spec = FamilySpec::random(order, probability, rng.gen());
        let graph = generate_family(&spec)?;
        out.push(CorpusEntry { spec, graph });
    }
    Ok(out)
}
