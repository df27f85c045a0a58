//! Maximum-cardinality matching in general graphs (Edmonds' blossom
//! contraction, O(V^3)).

use std::collections::VecDeque;

use crate::graph::{Graph, VertexSet};

const NONE: usize = usize::MAX;

/// Maximum matching of the subgraph of `g` induced by `set`.
///
/// Pairs are returned as `(a, b)` with `a < b`, sorted ascending.
pub fn max_matching_in_induced(g: &Graph, set: &VertexSet) -> Vec<(usize, usize)> {
    let vertices = set.to_vec();
    let mut local = vec![NONE; g.order()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let adj: Vec<Vec<usize>> = vertices
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&u| set.contains(u))
                .map(|u| local[u])
                .collect()
        })
        .collect();

    let mate = Blossom::new(&adj).solve();
    let mut pairs: Vec<(usize, usize)> = mate
        .iter()
        .enumerate()
        .filter(|&(i, &m)| m != NONE && i < m)
        .map(|(i, &m)| (vertices[i], vertices[m]))
        .collect();
    pairs.sort_unstable();
    pairs
}

struct Blossom<'a> {
    adj: &'a [Vec<usize>],
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Blossom<'a> {
    fn new(adj: &'a [Vec<usize>]) -> Self {
        let n = adj.len();
        Self {
            adj,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn solve(mut self) -> Vec<usize> {
        for root in 0..self.adj.len() {
            if self.mate[root] != NONE {
                continue;
            }
            let mut v = self.find_augmenting_path(root);
            while v != NONE {
                let pv = self.parent[v];
                let ppv = self.mate[pv];
                self.mate[v] = pv;
                self.mate[pv] = v;
                v = ppv;
            }
        }
        self.mate
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adj.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_augmenting_path(&mut self, root: usize) -> usize {
        let n = self.adj.len();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for idx in 0..self.adj[v].len() {
                let to = self.adj[v][idx];
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return to;
                    }
                    let m = self.mate[to];
                    self.used[m] = true;
                    self.queue.push_back(m);
                }
            }
        }
        NONE
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use proptest::prelude::*;

    /// Enumeration oracle: size of a maximum matching among `vertices`.
    fn brute_max_matching(g: &Graph, vertices: &[usize]) -> usize {
        match vertices.split_first() {
            None => 0,
            Some((&v, rest)) => {
                let skip = brute_max_matching(g, rest);
                let take = rest
                    .iter()
                    .filter(|&&u| g.has_edge(v, u))
                    .map(|&u| {
                        let remaining: Vec<usize> = rest.iter().copied().filter(|&w| w != u).collect();
                        1 + brute_max_matching(g, &remaining)
                    })
                    .max()
                    .unwrap_or(0);
                skip.max(take)
            }
        }
    }

    fn assert_valid(g: &Graph, set: &VertexSet, pairs: &[(usize, usize)]) {
        let mut seen = VertexSet::new(g.order());
        for &(a, b) in pairs {
            assert!(a < b && g.has_edge(a, b) && set.contains(a) && set.contains(b));
            assert!(seen.insert(a) && seen.insert(b));
        }
    }

    #[test]
    fn small_cases() {
        let c4 = cycle(4);
        assert_eq!(max_matching_in_induced(&c4, &VertexSet::full(4)).len(), 2);
        assert_eq!(max_matching_in_induced(&path(3), &VertexSet::full(3)).len(), 1);
        assert!(max_matching_in_induced(&path(3), &VertexSet::new(3)).is_empty());
    }

    #[test]
    fn odd_cycle_blossom() {
        // Two triangles joined by an edge need blossom contraction to reach 3.
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap();
        let pairs = max_matching_in_induced(&g, &VertexSet::full(6));
        assert_eq!(pairs.len(), 3);
        assert_valid(&g, &VertexSet::full(6), &pairs);
        let petersen = Graph::from_edges(
            10,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        .unwrap();
        assert_eq!(max_matching_in_induced(&petersen, &VertexSet::full(10)).len(), 5);
    }

    proptest! {
        #[test]
        fn agrees_with_enumeration(n in 1usize..10, bits in proptest::collection::vec(any::<bool>(), 45), mask in any::<u16>()) {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
            let g = Graph::from_edges(n, edges).unwrap();
            let set = VertexSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1));
            let m = max_matching_in_induced(&g, &set);
            assert_valid(&g, &set, &m);
            prop_assert_eq!(m.len(), brute_max_matching(&g, &set.to_vec()));
        }
    }
}
