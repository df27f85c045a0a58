//! Simple undirected graphs with bit-packed adjacency rows, the edge-list
//! format, and Cartesian n-products.

mod parse;
mod product;
mod vertex_set;

pub use parse::parse_edge_list;
pub use product::{EdgeAxis, ProductGraph};
pub use vertex_set::VertexSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph order must be at least 1")]
    EmptyGraph,
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(usize, usize),
    #[error("axis {axis} out of range for {factors} factors")]
    AxisOutOfRange { axis: usize, factors: usize },
    #[error("a Cartesian product needs at least 2 factors, got {0}")]
    TooFewFactors(usize),
    #[error("tuple {0:?} does not match the factor orders")]
    BadTuple(Vec<usize>),
}

/// Simple undirected graph on vertices `0..order`.
///
/// Immutable once built: no self-loops, symmetric adjacency, order >= 1.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<VertexSet>,
    name: Option<String>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edges<I>(order: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if order == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut rows = vec![VertexSet::new(order); order];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= order {
                    return Err(GraphError::VertexOutOfRange { vertex: x, order });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self { rows, name: None })
    }

    /// Edgeless graph of the given order.
    pub fn edgeless(order: usize) -> Result<Self, GraphError> {
        Self::from_edges(order, std::iter::empty())
    }

    pub(crate) fn from_rows(rows: Vec<VertexSet>) -> Self {
        debug_assert!(!rows.is_empty());
        debug_assert!(rows.iter().enumerate().all(|(v, r)| !r.contains(v)
            && r.iter().all(|u| rows[u].contains(v))));
        Self { rows, name: None }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Name if set, otherwise `G<order>`.
    pub fn label(&self) -> String {
        self.name
            .clone()
            .unwrap_or_else(|| format!("G{}", self.order()))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    /// Open neighborhood N(v). Panics when `v` is out of range; see
    /// [`Graph::neighbors_open`] for the checked form.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn neighbors_open(&self, v: usize) -> Result<&VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(&self.rows[v])
    }

    pub fn neighbors_closed(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.closed(v))
    }

    /// N[v], unchecked.
    pub(crate) fn closed(&self, v: usize) -> VertexSet {
        let mut s = self.rows[v].clone();
        s.insert(v);
        s
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.rows[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.order()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.rows.iter().any(VertexSet::is_empty)
    }

    pub fn first_isolated_vertex(&self) -> Option<usize> {
        self.rows.iter().position(VertexSet::is_empty)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Serializes to the edge-list format read by [`parse_edge_list`].
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("# {name}\n"));
        }
        out.push_str(&format!("{}\n", self.order()));
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.order() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.order(),
            })
        }
    }

    pub(crate) fn check_set(&self, s: &VertexSet) -> Result<(), GraphError> {
        if s.universe() == self.order() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: s.universe(),
                order: self.order(),
            })
        }
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("name", &self.name)
            .field("order", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Convenience constructors for the small named graphs used throughout tests.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
            .expect("path order >= 1")
            .with_name(format!("P{n}"))
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
            .expect("cycle")
            .with_name(format!("C{n}"))
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
            .expect("complete order >= 1")
            .with_name(format!("K{n}"))
    }

    /// Star with centre 0 and `n - 1` leaves.
    pub fn star(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (0, i)))
            .expect("star order >= 1")
            .with_name(format!("S{n}"))
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn open_and_closed_neighborhoods() {
        let p4 = path(4);
        assert_eq!(p4.neighbors_open(1).unwrap().to_vec(), vec![0, 2]);
        assert_eq!(p4.neighbors_closed(1).unwrap().to_vec(), vec![0, 1, 2]);
        let k2 = complete(2);
        assert_eq!(k2.neighbors_open(0).unwrap().to_vec(), vec![1]);
        assert_eq!(k2.neighbors_closed(0).unwrap().to_vec(), vec![0, 1]);
        let k1 = complete(1);
        assert!(k1.neighbors_open(0).unwrap().is_empty());
        assert_eq!(k1.neighbors_closed(0).unwrap().to_vec(), vec![0]);
    }

    #[test]
    fn neighborhood_out_of_range() {
        let p4 = path(4);
        assert_eq!(
            p4.neighbors_open(4),
            Err(GraphError::VertexOutOfRange { vertex: 4, order: 4 })
        );
        assert!(p4.neighbors_closed(9).is_err());
    }

    #[test]
    fn isolated_vertices() {
        assert!(!complete(2).has_isolated_vertex());
        assert!(complete(1).has_isolated_vertex());
        assert!(!path(4).has_isolated_vertex());
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(g.first_isolated_vertex(), Some(2));
    }

    #[test]
    fn construction_rejects_loops_and_empty() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(Graph::edgeless(0), Err(GraphError::EmptyGraph));
        assert!(matches!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, order: 2 })
        ));
    }

    #[test]
    fn named_families() {
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(cycle(5).edge_count(), 5);
        assert_eq!(complete(5).edge_count(), 10);
        assert_eq!(star(5).degree_sequence(), vec![1, 1, 1, 1, 4]);
        assert_eq!(cycle(4).edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }
}
