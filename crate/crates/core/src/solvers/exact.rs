//! Exact branch-and-bound search.
//!
//! Every node branches on the lowest-index undominated vertex `v`. Plain and
//! total search try each vertex covering `v` (from `N[v]` resp. `N(v)`) in
//! ascending order; paired search tries vertex-disjoint edges `(a, b)` with
//! `a ∈ N[v]`, so every solution is a disjoint union of edges and carries its
//! pairing. Once a candidate's subtree is exhausted the candidate is removed
//! from later siblings, which keeps the search complete while avoiding
//! re-exploring the same sets.
//!
//! The optimum size is found by iterative deepening. The certificate is then
//! made lexicographically smallest by fixing its members one position at a
//! time with constrained feasibility searches.

use super::mask::Mask;
use super::{DominationCertificate, DominationKind, DominationResult, SolverError};
use crate::graph::{Graph, VertexSet};

/// Exact domination number of the given kind with a lexicographically
/// smallest minimum certificate.
pub fn domination_number(g: &Graph, kind: DominationKind) -> Result<DominationResult, SolverError> {
    kind.check_host(g)?;
    let n = g.order();
    let (members, pairs) = if n <= 64 {
        Search::<u64>::new(g, kind).solve()
    } else if n <= 128 {
        Search::<u128>::new(g, kind).solve()
    } else {
        return Err(SolverError::OrderTooLarge(n));
    };
    let pairing = (kind == DominationKind::Paired).then_some(pairs);
    let certificate = DominationCertificate::new(g, kind, members, pairing)
        .expect("exact search produced an invalid certificate");
    Ok(DominationResult {
        number: certificate.size(),
        certificate,
    })
}

struct Witness<M> {
    members: M,
    pairs: Vec<(usize, usize)>,
}

struct Search<M> {
    n: usize,
    kind: DominationKind,
    full: M,
    closed: Vec<M>,
    open: Vec<M>,
}

impl<M: Mask> Search<M> {
    fn new(g: &Graph, kind: DominationKind) -> Self {
        let n = g.order();
        let open: Vec<M> = (0..n)
            .map(|v| g.neighbors(v).iter().fold(M::ZERO, |m, u| m | M::bit(u)))
            .collect();
        let closed = open.iter().enumerate().map(|(v, &m)| m | M::bit(v)).collect();
        Self {
            n,
            kind,
            full: M::low(n),
            closed,
            open,
        }
    }

    /// Vertices dominated by choosing `c`.
    #[inline]
    fn cover(&self, c: usize) -> M {
        match self.kind {
            DominationKind::Total => self.open[c],
            _ => self.closed[c],
        }
    }

    /// Vertices whose choice dominates `v`.
    #[inline]
    fn coverers(&self, v: usize) -> M {
        self.cover(v)
    }

    fn solve(&self) -> (VertexSet, Vec<(usize, usize)>) {
        let max_deg = self.open.iter().map(|m| m.count() as usize).max().unwrap_or(0);
        let (mut k, step) = match self.kind {
            DominationKind::Plain => (self.n.div_ceil(max_deg + 1).max(1), 1),
            DominationKind::Total => (self.n.div_ceil(max_deg).max(2), 1),
            DominationKind::Paired => (2 * self.n.div_ceil(2 * max_deg).max(1), 2),
        };
        let first = loop {
            if let Some(w) = self.feasible(M::ZERO, self.full, k) {
                break w;
            }
            k += step;
            assert!(k <= self.n, "the full vertex set always qualifies");
        };
        let best = self.lexicographic_minimum(k, first);
        let set = VertexSet::from_indices(self.n, best.members.ones());
        (set, best.pairs)
    }

    /// Refines a witness of the optimal size `k` into the lexicographically
    /// smallest optimal set.
    fn lexicographic_minimum(&self, k: usize, mut witness: Witness<M>) -> Witness<M> {
        let mut prefix = M::ZERO;
        let mut lo = 0;
        for t in 0..k {
            let incumbent = witness.members.ones().nth(t).expect("witness has k members");
            let mut pick = incumbent;
            for v in lo..incumbent {
                if let Some(w) = self.feasible(prefix | M::bit(v), M::above(v, self.n), k) {
                    witness = w;
                    pick = v;
                    break;
                }
            }
            prefix |= M::bit(pick);
            lo = pick + 1;
        }
        debug_assert!(witness.members == prefix);
        witness
    }

    /// Finds a set of at most `size` vertices that contains `forced`, is
    /// otherwise drawn from `allowed`, and satisfies the domination kind.
    fn feasible(&self, forced: M, allowed: M, size: usize) -> Option<Witness<M>> {
        if forced.count() as usize > size {
            return None;
        }
        let avail = allowed & !forced;
        match self.kind {
            DominationKind::Paired => {
                let mut pairs = Vec::new();
                self.branch_pairs(M::ZERO, M::ZERO, forced, avail, size / 2, &mut pairs)
                    .map(|members| Witness { members, pairs })
            }
            _ => {
                let dominated = forced.ones().fold(M::ZERO, |m, c| m | self.cover(c));
                let budget = size - forced.count() as usize;
                self.branch_single(dominated, forced, avail, budget)
                    .map(|members| Witness { members, pairs: Vec::new() })
            }
        }
    }

    /// True when `budget` picks from `avail` cannot possibly dominate
    /// `undominated`, or some undominated vertex has no available coverer.
    fn pruned(&self, undominated: M, avail: M, picks: usize) -> bool {
        if undominated.ones().any(|u| (self.coverers(u) & avail).is_zero()) {
            return true;
        }
        let need = undominated.count() as usize;
        let mut gains = [0u8; 128];
        let mut len = 0;
        for c in avail.ones() {
            let gain = (self.cover(c) & undominated).count();
            if gain > 0 {
                gains[len] = gain as u8;
                len += 1;
            }
        }
        let gains = &mut gains[..len];
        gains.sort_unstable_by(|a, b| b.cmp(a));
        let reach: usize = gains.iter().take(picks).map(|&g| g as usize).sum();
        reach < need
    }

    fn branch_single(&self, dominated: M, chosen: M, avail: M, budget: usize) -> Option<M> {
        let undominated = self.full & !dominated;
        if undominated.is_zero() {
            return Some(chosen);
        }
        if budget == 0 || self.pruned(undominated, avail, budget) {
            return None;
        }
        let v = undominated.lowest();
        let mut avail = avail;
        for c in (self.coverers(v) & avail).ones() {
            avail &= !M::bit(c);
            if let Some(found) = self.branch_single(dominated | self.cover(c), chosen | M::bit(c), avail, budget - 1) {
                return Some(found);
            }
        }
        None
    }

    fn branch_pairs(
        &self,
        dominated: M,
        chosen: M,
        pending: M,
        avail: M,
        budget: usize,
        pairs: &mut Vec<(usize, usize)>,
    ) -> Option<M> {
        // Forced members are matched first, each with a forced or available partner.
        if !pending.is_zero() {
            if budget == 0 {
                return None;
            }
            let f = pending.lowest();
            let rest = pending & !M::bit(f);
            for b in (self.open[f] & (avail | rest)).ones() {
                pairs.push((f.min(b), f.max(b)));
                let found = self.branch_pairs(
                    dominated | self.closed[f] | self.closed[b],
                    chosen | M::bit(f) | M::bit(b),
                    rest & !M::bit(b),
                    avail & !M::bit(b),
                    budget - 1,
                    pairs,
                );
                if found.is_some() {
                    return found;
                }
                pairs.pop();
            }
            return None;
        }

        let undominated = self.full & !dominated;
        if undominated.is_zero() {
            return Some(chosen);
        }
        if budget == 0 || self.pruned(undominated, avail, 2 * budget) {
            return None;
        }
        let v = undominated.lowest();
        let mut outer = avail;
        for a in (self.closed[v] & avail).ones() {
            outer &= !M::bit(a);
            for b in (self.open[a] & outer).ones() {
                pairs.push((a.min(b), a.max(b)));
                let found = self.branch_pairs(
                    dominated | self.closed[a] | self.closed[b],
                    chosen | M::bit(a) | M::bit(b),
                    M::ZERO,
                    outer & !M::bit(b),
                    budget - 1,
                    pairs,
                );
                if found.is_some() {
                    return found;
                }
                pairs.pop();
            }
        }
        None
    }
}
