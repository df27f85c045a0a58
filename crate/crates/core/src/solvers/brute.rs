use itertools::Itertools;

use super::{is_dominating, is_paired_dominating, is_total_dominating, DominationKind, SolverError};
use crate::graph::{Graph, VertexSet};

/// Subset-enumeration oracle: tries all sets by increasing size using only
/// the certificate predicates. Meant for orders up to about 20.
pub fn brute_force_number(g: &Graph, kind: DominationKind) -> Result<usize, SolverError> {
    kind.check_host(g)?;
    let n = g.order();
    for k in 0..=n {
        let hit = (0..n).combinations(k).any(|c| {
            let s = VertexSet::from_indices(n, c);
            match kind {
                DominationKind::Plain => is_dominating(g, &s),
                DominationKind::Total => is_total_dominating(g, &s),
                DominationKind::Paired => is_paired_dominating(g, &s).0,
            }
        });
        if hit {
            return Ok(k);
        }
    }
    unreachable!("the full vertex set dominates in every admissible graph")
}
