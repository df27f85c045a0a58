use serde::Serialize;

use super::MachineryError;
use crate::graph::{Graph, VertexSet};
use crate::solvers::{is_dominating, max_matching_in_induced};

/// How unmatched vertices of `B` are paired up before the repair loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum MatchingStrategy {
    /// A maximum matching of the subgraph induced by the unmatched part of `B`.
    #[default]
    Maximum,
    /// Greedy maximal matching scanning edges in ascending order.
    Greedy,
}

/// Trace of one run of [`pair_completion`].
#[derive(Debug, Clone, Serialize)]
pub struct PairCompletion {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    /// Final matching, pairs `(x, y)` with `x < y`, ascending.
    pub matching: Vec<(usize, usize)>,
    /// Vertices matched after the `B` matching step.
    pub m1: VertexSet,
    /// Vertices of `B ∪ C` left unmatched after that step.
    pub m2: VertexSet,
    /// `A ∪ B ∪ C`.
    pub initial: VertexSet,
    pub result: VertexSet,
    /// Vertices dropped because all their neighbors were already matched.
    pub removed: Vec<usize>,
    /// Dropped vertices after whose removal some former neighbor was left
    /// undominated. Expected empty.
    pub broken_removals: Vec<usize>,
    pub paired_dominating: bool,
    /// `|result| <= 2|A| + |M1| + 2|M2|`.
    pub within_bound: bool,
}

impl PairCompletion {
    pub fn bound(&self) -> usize {
        2 * self.a.len() + self.m1.len() + 2 * self.m2.len()
    }

    /// `|M1| + 2|M2|`, the part of the bound charged to `B ∪ C`.
    pub fn matched_weight(&self) -> usize {
        self.m1.len() + 2 * self.m2.len()
    }
}

/// Turns the dominating set `A ∪ B ∪ C` of `h` into a paired dominating set.
///
/// `pairs_c` must be a perfect matching of `C` made of edges of `h`. After
/// matching up `B`, each still-unmatched vertex of the set, in ascending
/// order, either adopts its lowest-index unmatched neighbor as a partner or
/// is removed. Every removal is re-checked for lost domination.
pub fn pair_completion(
    h: &Graph,
    a: &VertexSet,
    b: &VertexSet,
    c: &VertexSet,
    pairs_c: &[(usize, usize)],
    strategy: MatchingStrategy,
) -> Result<PairCompletion, MachineryError> {
    for s in [a, b, c] {
        h.check_set(s)?;
    }
    let n = h.order();
    let mut matched = VertexSet::new(n);
    let mut matching = Vec::new();
    for &(x, y) in pairs_c {
        if !h.has_edge(x, y) || !c.contains(x) || !c.contains(y) || matched.contains(x) || matched.contains(y) {
            return Err(MachineryError::Precondition(format!("({x},{y}) is not a usable pair of C")));
        }
        matched.insert(x);
        matched.insert(y);
        matching.push((x.min(y), x.max(y)));
    }
    if matched != *c {
        return Err(MachineryError::Precondition("pairs of C do not cover C".into()));
    }

    let free_b = b.difference(&matched);
    let extra = match strategy {
        MatchingStrategy::Maximum => max_matching_in_induced(h, &free_b),
        MatchingStrategy::Greedy => {
            let mut taken = VertexSet::new(n);
            let mut out = Vec::new();
            for (x, y) in h.edges() {
                if free_b.contains(x) && free_b.contains(y) && !taken.contains(x) && !taken.contains(y) {
                    taken.insert(x);
                    taken.insert(y);
                    out.push((x, y));
                }
            }
            out
        }
    };
    for (x, y) in extra {
        matched.insert(x);
        matched.insert(y);
        matching.push((x, y));
    }
    let m1 = matched.clone();
    let m2 = b.union(c).difference(&m1);

    let initial = a.union(b).union(c);
    let mut e = initial.clone();
    let mut removed = Vec::new();
    let mut broken_removals = Vec::new();
    for v in initial.difference(&matched).to_vec() {
        if matched.contains(v) {
            continue;
        }
        match h.neighbors(v).difference(&matched).first() {
            Some(w) => {
                matched.insert(v);
                matched.insert(w);
                e.insert(w);
                matching.push((v.min(w), v.max(w)));
            }
            None => {
                e.remove(v);
                removed.push(v);
                let lost = h.closed(v).iter().any(|x| !h.closed(x).intersects(&e));
                if lost {
                    broken_removals.push(v);
                }
            }
        }
    }
    matching.sort_unstable();

    let covered: VertexSet = VertexSet::from_indices(n, matching.iter().flat_map(|&(x, y)| [x, y]));
    let paired_dominating = covered == e && is_dominating(h, &e);
    let bound = 2 * a.len() + m1.len() + 2 * m2.len();
    Ok(PairCompletion {
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        matching,
        m1,
        m2,
        initial,
        within_bound: e.len() <= bound,
        result: e,
        removed,
        broken_removals,
        paired_dominating,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::solvers::is_paired_dominating;

    fn set(n: usize, vs: &[usize]) -> VertexSet {
        VertexSet::from_indices(n, vs.iter().copied())
    }

    #[test]
    fn k2_already_paired() {
        let h = complete(2);
        let r = pair_completion(&h, &set(2, &[]), &set(2, &[]), &set(2, &[0, 1]), &[(0, 1)], MatchingStrategy::Maximum)
            .unwrap();
        assert_eq!(r.result.to_vec(), vec![0, 1]);
        assert_eq!(r.bound(), 2);
        assert!(r.paired_dominating && r.within_bound);
    }

    #[test]
    fn path_adopts_partner() {
        let h = path(4);
        let r = pair_completion(&h, &set(4, &[1]), &set(4, &[]), &set(4, &[2, 3]), &[(2, 3)], MatchingStrategy::Maximum)
            .unwrap();
        assert_eq!(r.result.to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(r.matching, vec![(0, 1), (2, 3)]);
        assert_eq!(r.bound(), 4);
        assert!(r.paired_dominating && r.within_bound);
        assert!(is_paired_dominating(&h, &r.result).0);
    }

    #[test]
    fn lone_b_vertex() {
        let h = path(3);
        let r = pair_completion(&h, &set(3, &[]), &set(3, &[1]), &set(3, &[]), &[], MatchingStrategy::Maximum).unwrap();
        assert!(r.m1.is_empty());
        assert_eq!(r.m2.to_vec(), vec![1]);
        assert_eq!(r.result.to_vec(), vec![0, 1]);
        assert_eq!(r.bound(), 2);
        assert!(r.paired_dominating && r.within_bound);
    }

    #[test]
    fn removal_keeps_domination() {
        // Star with matched leaves around the center: the unmatched leaf 3
        // only sees the matched center and is dropped.
        let h = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 4)]).unwrap();
        let r = pair_completion(&h, &set(5, &[3]), &set(5, &[]), &set(5, &[0, 2]), &[(0, 2)], MatchingStrategy::Maximum)
            .unwrap();
        assert_eq!(r.removed, vec![3]);
        assert!(r.broken_removals.is_empty());
        assert!(!r.paired_dominating, "vertex 4 was never dominated");
    }

    #[test]
    fn greedy_matching_overcharges() {
        // Path 2-0-1-3: B holds both edges (0,2) and (1,3), but the greedy
        // scan takes (0,1) first and strands 2 and 3.
        let h = Graph::from_edges(4, [(0, 2), (1, 3), (0, 1)]).unwrap();
        let b = set(4, &[0, 1, 2, 3]);
        let none = set(4, &[]);
        let greedy = pair_completion(&h, &none, &b, &none, &[], MatchingStrategy::Greedy).unwrap();
        assert_eq!(greedy.m2.to_vec(), vec![2, 3]);
        assert_eq!(greedy.matched_weight(), 6);
        let max = pair_completion(&h, &none, &b, &none, &[], MatchingStrategy::Maximum).unwrap();
        assert_eq!(max.matched_weight(), 4);
        assert!(max.paired_dominating && greedy.paired_dominating);
    }

    #[test]
    fn rejects_bad_pairs() {
        let h = path(4);
        let none = set(4, &[]);
        assert!(pair_completion(&h, &none, &none, &set(4, &[0, 2]), &[(0, 2)], MatchingStrategy::Maximum).is_err());
        assert!(pair_completion(&h, &none, &none, &set(4, &[0, 1, 2]), &[(0, 1)], MatchingStrategy::Maximum).is_err());
    }
}
