use super::{Graph, GraphError, VertexSet};

/// Index of the factor an edge of a product varies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeAxis(pub usize);

/// Cartesian product `A^1 □ ... □ A^n`.
///
/// A vertex tuple `(u_1, ..., u_n)` is stored at index `Σ u_i · stride_i`,
/// the last factor being the least significant digit.
#[derive(Clone, Debug)]
pub struct ProductGraph {
    factors: Vec<Graph>,
    graph: Graph,
    strides: Vec<usize>,
}

impl ProductGraph {
    pub fn new(factors: Vec<Graph>) -> Result<Self, GraphError> {
        if factors.len() < 2 {
            return Err(GraphError::TooFewFactors(factors.len()));
        }
        let n = factors.len();
        let mut strides = vec![1usize; n];
        for i in (0..n - 1).rev() {
            strides[i] = strides[i + 1] * factors[i + 1].order();
        }
        let order = strides[0] * factors[0].order();

        let mut rows = vec![VertexSet::new(order); order];
        for (u, row) in rows.iter_mut().enumerate() {
            for (axis, f) in factors.iter().enumerate() {
                let c = (u / strides[axis]) % f.order();
                let base = u - c * strides[axis];
                for nb in f.neighbors(c) {
                    row.insert(base + nb * strides[axis]);
                }
            }
        }
        let name = factors.iter().map(Graph::label).collect::<Vec<_>>().join("x");
        Ok(Self {
            graph: Graph::from_rows(rows).with_name(name),
            factors,
            strides,
        })
    }

    pub fn factors(&self) -> &[Graph] {
        &self.factors
    }

    pub fn factor(&self, axis: usize) -> &Graph {
        &self.factors[axis]
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    /// The flattened product.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn factor_orders(&self) -> Vec<usize> {
        self.factors.iter().map(Graph::order).collect()
    }

    pub fn encode(&self, tuple: &[usize]) -> Result<usize, GraphError> {
        if tuple.len() != self.arity()
            || tuple.iter().zip(&self.factors).any(|(&c, f)| c >= f.order())
        {
            return Err(GraphError::BadTuple(tuple.to_vec()));
        }
        Ok(tuple.iter().zip(&self.strides).map(|(c, s)| c * s).sum())
    }

    pub fn decode(&self, index: usize) -> Vec<usize> {
        (0..self.arity()).map(|i| self.coordinate(index, i)).collect()
    }

    #[inline]
    pub fn coordinate(&self, index: usize, axis: usize) -> usize {
        (index / self.strides[axis]) % self.factors[axis].order()
    }

    /// Index obtained by replacing coordinate `axis` of `index` with `value`.
    #[inline]
    pub fn with_coordinate(&self, index: usize, axis: usize, value: usize) -> usize {
        index - self.coordinate(index, axis) * self.strides[axis] + value * self.strides[axis]
    }

    /// The unique coordinate in which the endpoints of edge `(u, v)` differ.
    pub fn edge_axis(&self, u: usize, v: usize) -> Result<EdgeAxis, GraphError> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        if !self.graph.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let axis = (0..self.arity())
            .find(|&i| self.coordinate(u, i) != self.coordinate(v, i))
            .expect("adjacent vertices differ somewhere");
        Ok(EdgeAxis(axis))
    }

    /// N_{□A^i}(u): product vertices joined to `u` by an edge of axis `axis`.
    pub fn axis_neighborhood(&self, u: usize, axis: usize) -> Result<VertexSet, GraphError> {
        self.graph.check_vertex(u)?;
        self.check_axis(axis)?;
        Ok(self.axis_neighbors(u, axis))
    }

    pub(crate) fn axis_neighbors(&self, u: usize, axis: usize) -> VertexSet {
        let c = self.coordinate(u, axis);
        let mut s = VertexSet::new(self.graph.order());
        for nb in self.factors[axis].neighbors(c) {
            s.insert(self.with_coordinate(u, axis, nb));
        }
        s
    }

    /// Φ_{A^i}(S): the coordinate-`axis` image of `set`.
    pub fn project(&self, set: &VertexSet, axis: usize) -> Result<VertexSet, GraphError> {
        self.graph.check_set(set)?;
        self.check_axis(axis)?;
        Ok(self.projection(set, axis))
    }

    pub(crate) fn projection(&self, set: &VertexSet, axis: usize) -> VertexSet {
        let mut out = VertexSet::new(self.factors[axis].order());
        for u in set {
            out.insert(self.coordinate(u, axis));
        }
        out
    }

    pub(crate) fn check_axis(&self, axis: usize) -> Result<(), GraphError> {
        if axis < self.arity() {
            Ok(())
        } else {
            Err(GraphError::AxisOutOfRange {
                axis,
                factors: self.arity(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use proptest::prelude::*;

    fn k2p3() -> ProductGraph {
        ProductGraph::new(vec![complete(2), path(3)]).unwrap()
    }

    /// Independent adjacency rule: tuples differ in exactly one coordinate,
    /// and that pair is an edge of the factor.
    fn rule_adjacent(p: &ProductGraph, a: &[usize], b: &[usize]) -> bool {
        let diff: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
        diff.len() == 1 && p.factor(diff[0]).has_edge(a[diff[0]], b[diff[0]])
    }

    #[test]
    fn k2_square_is_c4() {
        let p = ProductGraph::new(vec![complete(2), complete(2)]).unwrap();
        let g = p.graph();
        assert_eq!((g.order(), g.edge_count()), (4, 4));
        assert_eq!(g.degree_sequence(), vec![2, 2, 2, 2]);
        // (0,0)-(0,1)-(1,1)-(1,0)-(0,0)
        assert!(g.has_edge(0, 1) && g.has_edge(1, 3) && g.has_edge(3, 2) && g.has_edge(2, 0));
        assert!(!g.has_edge(0, 3) && !g.has_edge(1, 2));
    }

    #[test]
    fn k2_by_p3_is_grid() {
        let p = k2p3();
        assert_eq!((p.graph().order(), p.graph().edge_count()), (6, 7));
        assert_eq!(p.encode(&[1, 2]).unwrap(), 5);
        assert_eq!(p.decode(5), vec![1, 2]);
        assert_eq!(p.strides(), &[3, 1]);
        assert!(p.encode(&[2, 0]).is_err());
        assert!(p.encode(&[0]).is_err());
    }

    #[test]
    fn too_few_factors() {
        assert_eq!(
            ProductGraph::new(vec![complete(2)]).unwrap_err(),
            GraphError::TooFewFactors(1)
        );
    }

    #[test]
    fn edge_axes() {
        let p = k2p3();
        let e = |a: [usize; 2], b: [usize; 2]| {
            p.edge_axis(p.encode(&a).unwrap(), p.encode(&b).unwrap())
        };
        assert_eq!(e([0, 1], [1, 1]), Ok(EdgeAxis(0)));
        assert_eq!(e([0, 0], [0, 1]), Ok(EdgeAxis(1)));
        assert!(matches!(e([0, 0], [1, 1]), Err(GraphError::NotAnEdge(..))));
    }

    #[test]
    fn axis_neighborhoods() {
        let p = k2p3();
        let u = p.encode(&[0, 1]).unwrap();
        let tuples = |s: VertexSet| s.iter().map(|x| p.decode(x)).collect::<Vec<_>>();
        assert_eq!(tuples(p.axis_neighborhood(u, 1).unwrap()), vec![vec![0, 0], vec![0, 2]]);
        assert_eq!(tuples(p.axis_neighborhood(u, 0).unwrap()), vec![vec![1, 1]]);
        assert!(p.axis_neighborhood(u, 2).is_err());
        assert!(p.axis_neighborhood(6, 0).is_err());

        let degenerate = ProductGraph::new(vec![complete(1), path(3)]).unwrap();
        assert!(degenerate.axis_neighborhood(0, 0).unwrap().is_empty());
    }

    #[test]
    fn projections() {
        let p = k2p3();
        let s = VertexSet::from_indices(6, [p.encode(&[0, 1]).unwrap(), p.encode(&[1, 1]).unwrap()]);
        assert_eq!(p.project(&s, 0).unwrap().to_vec(), vec![0, 1]);
        assert_eq!(p.project(&s, 1).unwrap().to_vec(), vec![1]);
        assert!(p.project(&VertexSet::new(6), 0).unwrap().is_empty());
        assert!(p.project(&VertexSet::new(5), 0).is_err());
    }

    #[test]
    fn associativity_up_to_relabeling() {
        let (a, b, c) = (path(3), cycle(4), star(3));
        let ab = ProductGraph::new(vec![a.clone(), b.clone()]).unwrap();
        let left = ProductGraph::new(vec![ab.graph().clone(), c.clone()]).unwrap();
        let flat = ProductGraph::new(vec![a, b, c]).unwrap();
        assert_eq!(left.graph().edge_count(), flat.graph().edge_count());
        assert_eq!(left.graph().degree_sequence(), flat.graph().degree_sequence());
        // With the last factor least significant the two indexings coincide.
        assert_eq!(left.graph().edges().collect::<Vec<_>>(), flat.graph().edges().collect::<Vec<_>>());
    }

    fn small_graph() -> impl Strategy<Value = Graph> {
        (1usize..5).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                let edges = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn product_invariants(factors in proptest::collection::vec(small_graph(), 2..4)) {
            let p = ProductGraph::new(factors).unwrap();
            let g = p.graph();
            prop_assert_eq!(g.order(), p.factor_orders().iter().product::<usize>());

            let mut per_axis = vec![0usize; p.arity()];
            for u in 0..g.order() {
                let t = p.decode(u);
                prop_assert_eq!(p.encode(&t).unwrap(), u);
                let mut union = VertexSet::new(g.order());
                for i in 0..p.arity() {
                    let ax = p.axis_neighborhood(u, i).unwrap();
                    prop_assert!(ax.is_subset(g.neighbors(u)));
                    union.union_with(&ax);
                }
                prop_assert_eq!(&union, g.neighbors(u));
                for v in 0..g.order() {
                    prop_assert_eq!(g.has_edge(u, v), rule_adjacent(&p, &t, &p.decode(v)));
                }
            }
            for (u, v) in g.edges() {
                per_axis[p.edge_axis(u, v).unwrap().0] += 1;
            }
            prop_assert_eq!(per_axis.iter().sum::<usize>(), g.edge_count());
        }

        #[test]
        fn projection_never_grows(bits in proptest::collection::vec(any::<bool>(), 12), axis in 0usize..2) {
            let p = k2p3();
            let s = VertexSet::from_indices(6, bits.iter().take(6).enumerate().filter(|(_, b)| **b).map(|(i, _)| i));
            prop_assert!(p.project(&s, axis).unwrap().len() <= s.len());
        }
    }
}
