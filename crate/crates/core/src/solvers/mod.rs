//! Certificate predicates and exact solvers for the domination, total
//! domination, and paired domination numbers.

mod brute;
mod exact;
mod mask;
mod matching;

pub use brute::brute_force_number;
pub use exact::domination_number;
pub use matching::max_matching_in_induced;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("isolated vertex {vertex}: {kind} domination needs a graph without isolated vertices")]
    IsolatedVertex { vertex: usize, kind: DominationKind },
    #[error("graph order {0} exceeds the exact solver limit of 128 vertices")]
    OrderTooLarge(usize),
    #[error("vertex set over {got} vertices does not match graph order {order}")]
    UniverseMismatch { got: usize, order: usize },
    #[error("invalid {kind} certificate: {reason}")]
    InvalidCertificate { kind: DominationKind, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DominationKind {
    Plain,
    Total,
    Paired,
}

impl DominationKind {
    pub const ALL: [DominationKind; 3] = [Self::Plain, Self::Total, Self::Paired];

    /// Name of the invariant as printed by the CLI.
    pub fn symbol(self) -> &'static str {
        match self {
            Self::Plain => "gamma",
            Self::Total => "gamma_t",
            Self::Paired => "gamma_pr",
        }
    }

    pub(crate) fn check_host(self, g: &Graph) -> Result<(), SolverError> {
        match (self, g.first_isolated_vertex()) {
            (Self::Total | Self::Paired, Some(vertex)) => {
                Err(SolverError::IsolatedVertex { vertex, kind: self })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for DominationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Plain => "plain",
            Self::Total => "total",
            Self::Paired => "paired",
        })
    }
}

impl FromStr for DominationKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plain" | "dominating" => Ok(Self::Plain),
            "total" => Ok(Self::Total),
            "paired" => Ok(Self::Paired),
            other => Err(format!("unknown domination kind `{other}`")),
        }
    }
}

/// A vertex set together with the domination kind it witnesses; paired
/// certificates carry their perfect matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationCertificate {
    kind: DominationKind,
    members: VertexSet,
    pairing: Vec<(usize, usize)>,
}

impl DominationCertificate {
    /// Validates `members` (and `pairing`, for the paired kind) against `g`.
    ///
    /// For a paired certificate with no explicit pairing, a perfect matching
    /// of the induced subgraph is searched for.
    pub fn new(
        g: &Graph,
        kind: DominationKind,
        members: VertexSet,
        pairing: Option<Vec<(usize, usize)>>,
    ) -> Result<Self, SolverError> {
        check_universe(g, &members)?;
        kind.check_host(g)?;
        let invalid = |reason: &str| SolverError::InvalidCertificate {
            kind,
            reason: reason.to_string(),
        };
        let pairing = match kind {
            DominationKind::Plain => {
                if pairing.is_some() {
                    return Err(invalid("pairing given for a non-paired certificate"));
                }
                if !is_dominating(g, &members) {
                    return Err(invalid("set is not dominating"));
                }
                Vec::new()
            }
            DominationKind::Total => {
                if pairing.is_some() {
                    return Err(invalid("pairing given for a non-paired certificate"));
                }
                if !is_total_dominating(g, &members) {
                    return Err(invalid("set is not total dominating"));
                }
                Vec::new()
            }
            DominationKind::Paired => {
                if !is_dominating(g, &members) {
                    return Err(invalid("set is not dominating"));
                }
                match pairing {
                    Some(p) => {
                        check_pairing(g, &members, &p).map_err(|r| invalid(&r))?;
                        normalize_pairs(p)
                    }
                    None => match is_paired_dominating(g, &members) {
                        (true, Some(p)) => p,
                        _ => return Err(invalid("induced subgraph has no perfect matching")),
                    },
                }
            }
        };
        Ok(Self {
            kind,
            members,
            pairing,
        })
    }

    pub fn kind(&self) -> DominationKind {
        self.kind
    }

    pub fn members(&self) -> &VertexSet {
        &self.members
    }

    /// Pairs `(a, b)` with `a < b`, sorted; empty unless the kind is paired.
    pub fn pairing(&self) -> &[(usize, usize)] {
        &self.pairing
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Partner of `v` in the pairing.
    pub fn partner(&self, v: usize) -> Option<usize> {
        self.pairing.iter().find_map(|&(a, b)| match v {
            _ if v == a => Some(b),
            _ if v == b => Some(a),
            _ => None,
        })
    }
}

impl fmt::Display for DominationCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.members)?;
        if self.kind == DominationKind::Paired {
            let pairs: Vec<String> = self.pairing.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            write!(f, " pairs {{{}}}", pairs.join(","))?;
        }
        Ok(())
    }
}

/// Minimum size together with a certificate of that size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationResult {
    pub number: usize,
    pub certificate: DominationCertificate,
}

pub fn is_dominating(g: &Graph, set: &VertexSet) -> bool {
    (0..g.order()).all(|v| set.contains(v) || g.neighbors(v).intersects(set))
}

pub fn is_total_dominating(g: &Graph, set: &VertexSet) -> bool {
    (0..g.order()).all(|v| g.neighbors(v).intersects(set))
}

/// Checks paired domination; on success returns the witnessing perfect
/// matching of the induced subgraph.
pub fn is_paired_dominating(g: &Graph, set: &VertexSet) -> (bool, Option<Vec<(usize, usize)>>) {
    if set.len() % 2 == 1 || !is_dominating(g, set) {
        return (false, None);
    }
    let matching = max_matching_in_induced(g, set);
    if 2 * matching.len() == set.len() {
        (true, Some(matching))
    } else {
        (false, None)
    }
}

/// Checks that `pairs` is a perfect matching of the subgraph induced by `members`.
pub(crate) fn check_pairing(g: &Graph, members: &VertexSet, pairs: &[(usize, usize)]) -> Result<(), String> {
    let mut covered = VertexSet::new(g.order());
    for &(a, b) in pairs {
        if !members.contains(a) || !members.contains(b) {
            return Err(format!("pair {a}-{b} leaves the set"));
        }
        if !g.has_edge(a, b) {
            return Err(format!("pair {a}-{b} is not an edge"));
        }
        if !covered.insert(a) || !covered.insert(b) {
            return Err(format!("pair {a}-{b} reuses a vertex"));
        }
    }
    if covered != *members {
        return Err("pairing does not cover every member".into());
    }
    Ok(())
}

pub(crate) fn normalize_pairs(mut pairs: Vec<(usize, usize)>) -> Vec<(usize, usize)> {
    for p in &mut pairs {
        if p.0 > p.1 {
            *p = (p.1, p.0);
        }
    }
    pairs.sort_unstable();
    pairs
}

fn check_universe(g: &Graph, s: &VertexSet) -> Result<(), SolverError> {
    if s.universe() == g.order() {
        Ok(())
    } else {
        Err(SolverError::UniverseMismatch {
            got: s.universe(),
            order: g.order(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, v.iter().copied())
    }

    #[test]
    fn dominating_predicate() {
        let p4 = path(4);
        assert!(is_dominating(&p4, &set(4, &[1, 2])));
        assert!(!is_dominating(&p4, &set(4, &[0])));
        assert!(is_dominating(&p4, &VertexSet::full(4)));
        assert!(is_dominating(&complete(1), &set(1, &[0])));
    }

    #[test]
    fn total_dominating_predicate() {
        let k2 = complete(2);
        assert!(is_total_dominating(&k2, &set(2, &[0, 1])));
        assert!(!is_total_dominating(&k2, &set(2, &[0])));
        assert!(is_total_dominating(&path(3), &set(3, &[0, 1])));
        assert!(!is_total_dominating(&complete(1), &set(1, &[0])));
    }

    #[test]
    fn paired_predicate() {
        let (ok, pairs) = is_paired_dominating(&path(4), &set(4, &[1, 2]));
        assert!(ok);
        assert_eq!(pairs, Some(vec![(1, 2)]));
        assert!(!is_paired_dominating(&cycle(4), &set(4, &[0, 2])).0);
        assert!(!is_paired_dominating(&path(4), &set(4, &[0, 1, 2])).0);
    }

    #[test]
    fn certificates_validate() {
        let p4 = path(4);
        let c = DominationCertificate::new(&p4, DominationKind::Paired, set(4, &[1, 2]), None).unwrap();
        assert_eq!(c.pairing(), &[(1, 2)]);
        assert_eq!(c.partner(2), Some(1));
        let explicit = DominationCertificate::new(&p4, DominationKind::Paired, set(4, &[0, 1, 2, 3]), Some(vec![(3, 2), (1, 0)])).unwrap();
        assert_eq!(explicit.pairing(), &[(0, 1), (2, 3)]);
        assert!(DominationCertificate::new(&p4, DominationKind::Paired, set(4, &[0, 1, 2, 3]), Some(vec![(1, 2), (0, 3)])).is_err());
        assert!(DominationCertificate::new(&p4, DominationKind::Total, set(4, &[0, 3]), None).is_err());
        assert!(DominationCertificate::new(&p4, DominationKind::Plain, set(5, &[0]), None).is_err());
        let iso = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(matches!(
            DominationCertificate::new(&iso, DominationKind::Total, VertexSet::full(3), None),
            Err(SolverError::IsolatedVertex { vertex: 2, .. })
        ));
        assert!(DominationCertificate::new(&iso, DominationKind::Plain, set(3, &[0, 2]), None).is_ok());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("total".parse::<DominationKind>(), Ok(DominationKind::Total));
        assert!("roman".parse::<DominationKind>().is_err());
        assert_eq!(DominationKind::Paired.symbol(), "gamma_pr");
    }
}
