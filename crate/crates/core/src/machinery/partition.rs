use serde::Serialize;

use super::MachineryError;
use crate::graph::{Graph, ProductGraph, VertexSet};
use crate::solvers::{DominationCertificate, DominationKind};

/// How blocks relate to their representatives.
///
/// * `Open`: block `i` lies in `N(u_i)` (built from a total dominating set).
/// * `Closed`: `u_i` is in block `i`, which lies in `N[u_i]` (dominating set).
/// * `Paired`: `{x_i, y_i}` is in block `i`, which lies in `N[x_i] ∪ N[y_i]`
///   (paired dominating set with pairs `(x_i, y_i)`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PartitionMode {
    Open,
    Closed,
    Paired,
}

impl PartitionMode {
    pub fn kind(self) -> DominationKind {
        match self {
            Self::Open => DominationKind::Total,
            Self::Closed => DominationKind::Plain,
            Self::Paired => DominationKind::Paired,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Representative {
    Single(usize),
    Pair(usize, usize),
}

impl Representative {
    pub fn vertices(self) -> Vec<usize> {
        match self {
            Self::Single(v) => vec![v],
            Self::Pair(x, y) => vec![x, y],
        }
    }
}

/// Ordered blocks covering a factor's vertex set, one per representative.
#[derive(Debug, Clone)]
pub struct Partition {
    host: Graph,
    mode: PartitionMode,
    blocks: Vec<VertexSet>,
    representatives: Vec<Representative>,
    block_of: Vec<usize>,
}

/// Partitions `g` around the certificate.
///
/// Representatives are pinned to their own blocks first (closed: `u_i`;
/// paired: `x_i` and `y_i`); every other vertex joins the lowest-index block
/// whose neighborhood condition admits it.
pub fn build_partition(
    g: &Graph,
    certificate: &DominationCertificate,
    mode: PartitionMode,
) -> Result<Partition, MachineryError> {
    if certificate.kind() != mode.kind() {
        return Err(MachineryError::ModeMismatch {
            kind: certificate.kind(),
            mode,
        });
    }
    // Re-validate against this graph; the certificate may belong to another.
    let pairing = (mode == PartitionMode::Paired).then(|| certificate.pairing().to_vec());
    DominationCertificate::new(g, certificate.kind(), certificate.members().clone(), pairing)?;

    let representatives: Vec<Representative> = match mode {
        PartitionMode::Paired => certificate
            .pairing()
            .iter()
            .map(|&(x, y)| Representative::Pair(x, y))
            .collect(),
        _ => certificate.members().iter().map(Representative::Single).collect(),
    };
    let regions: Vec<VertexSet> = representatives
        .iter()
        .map(|r| match (mode, *r) {
            (PartitionMode::Open, Representative::Single(u)) => g.neighbors(u).clone(),
            (PartitionMode::Closed, Representative::Single(u)) => g.closed(u),
            (_, Representative::Pair(x, y)) => g.closed(x).union(&g.closed(y)),
            _ => unreachable!("representative shape follows the mode"),
        })
        .collect();

    const UNSET: usize = usize::MAX;
    let mut block_of = vec![UNSET; g.order()];
    if mode != PartitionMode::Open {
        for (i, r) in representatives.iter().enumerate() {
            for v in r.vertices() {
                block_of[v] = i;
            }
        }
    }
    for v in 0..g.order() {
        if block_of[v] == UNSET {
            block_of[v] = regions
                .iter()
                .position(|r| r.contains(v))
                .ok_or(MachineryError::Unassignable(v))?;
        }
    }
    let mut blocks = vec![VertexSet::new(g.order()); representatives.len()];
    for (v, &b) in block_of.iter().enumerate() {
        blocks[b].insert(v);
    }
    if let Some(i) = blocks.iter().position(VertexSet::is_empty) {
        return Err(MachineryError::EmptyBlock(i));
    }
    Ok(Partition {
        host: g.clone(),
        mode,
        blocks,
        representatives,
        block_of,
    })
}

impl Partition {
    pub fn host(&self) -> &Graph {
        &self.host
    }

    pub fn mode(&self) -> PartitionMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &VertexSet {
        &self.blocks[i]
    }

    pub fn representatives(&self) -> &[Representative] {
        &self.representatives
    }

    pub fn representative(&self, i: usize) -> Representative {
        self.representatives[i]
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.block_of[v]
    }

    /// Checks the mode's containment invariant for every block.
    pub fn is_valid(&self) -> bool {
        let g = &self.host;
        let covered = self
            .blocks
            .iter()
            .fold(VertexSet::new(g.order()), |acc, b| acc.union(b));
        let disjoint = self.blocks.iter().map(VertexSet::len).sum::<usize>() == g.order();
        covered.len() == g.order()
            && disjoint
            && self
                .blocks
                .iter()
                .zip(&self.representatives)
                .all(|(b, r)| match (self.mode, *r) {
                    (PartitionMode::Open, Representative::Single(u)) => b.is_subset(g.neighbors(u)),
                    (PartitionMode::Closed, Representative::Single(u)) => {
                        b.contains(u) && b.is_subset(&g.closed(u))
                    }
                    (PartitionMode::Paired, Representative::Pair(x, y)) => {
                        g.has_edge(x, y)
                            && b.contains(x)
                            && b.contains(y)
                            && b.is_subset(&g.closed(x).union(&g.closed(y)))
                    }
                    _ => false,
                })
    }
}

/// Cells of the product of one partition per factor, indexed in mixed
/// radix over block indices (last axis least significant).
#[derive(Debug, Clone)]
pub struct BlockGrid {
    partitions: Vec<Partition>,
    dims: Vec<usize>,
}

impl BlockGrid {
    pub fn new(product: &ProductGraph, partitions: Vec<Partition>) -> Result<Self, MachineryError> {
        let matches = partitions.len() == product.arity()
            && partitions
                .iter()
                .zip(product.factors())
                .all(|(p, f)| p.host().order() == f.order() && p.host().edges().eq(f.edges()));
        if !matches {
            return Err(MachineryError::GridMismatch);
        }
        let dims = partitions.iter().map(Partition::len).collect();
        Ok(Self { partitions, dims })
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn partition(&self, axis: usize) -> &Partition {
        &self.partitions[axis]
    }

    pub fn arity(&self) -> usize {
        self.dims.len()
    }

    /// Block counts per axis.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn cell_count(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn encode_cell(&self, cell: &[usize]) -> usize {
        cell.iter().zip(&self.dims).fold(0, |acc, (&c, &d)| acc * d + c)
    }

    pub fn decode_cell(&self, mut index: usize) -> Vec<usize> {
        let mut cell = vec![0; self.arity()];
        for axis in (0..self.arity()).rev() {
            cell[axis] = index % self.dims[axis];
            index /= self.dims[axis];
        }
        cell
    }

    pub fn cells(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.cell_count()).map(|i| self.decode_cell(i))
    }

    /// Cell containing product vertex `u`.
    pub fn cell_of(&self, product: &ProductGraph, u: usize) -> Vec<usize> {
        (0..self.arity())
            .map(|axis| self.partitions[axis].block_of(product.coordinate(u, axis)))
            .collect()
    }

    /// Number of slabs along `target_axis`: one per choice of block on every
    /// other axis.
    pub fn slab_count(&self, target_axis: usize) -> usize {
        self.dims
            .iter()
            .enumerate()
            .filter(|&(a, _)| a != target_axis)
            .map(|(_, d)| d)
            .product()
    }

    /// Slab (along `target_axis`) that contains `cell`.
    pub fn slab_of_cell(&self, target_axis: usize, cell: &[usize]) -> usize {
        (0..self.arity())
            .filter(|&a| a != target_axis)
            .fold(0, |acc, a| acc * self.dims[a] + cell[a])
    }

    /// Cell formed by slab `slab` and block `block` on the target axis.
    pub fn cell_in_slab(&self, target_axis: usize, slab: usize, block: usize) -> Vec<usize> {
        let mut cell = vec![0; self.arity()];
        let mut rest = slab;
        for a in (0..self.arity()).rev() {
            if a == target_axis {
                cell[a] = block;
            } else {
                cell[a] = rest % self.dims[a];
                rest /= self.dims[a];
            }
        }
        cell
    }

    /// Product vertices of a cell.
    pub fn cell_vertices(&self, product: &ProductGraph, cell: &[usize]) -> VertexSet {
        let lists: Vec<Vec<usize>> = cell
            .iter()
            .enumerate()
            .map(|(a, &b)| self.partitions[a].block(b).to_vec())
            .collect();
        let mut out = VertexSet::new(product.graph().order());
        for_each_tuple(&lists, |t| {
            out.insert(product.encode(t).expect("block members are factor vertices"));
        });
        out
    }
}

/// Calls `f` on every tuple of the Cartesian product of `lists`, last
/// position varying fastest.
pub(crate) fn for_each_tuple(lists: &[Vec<usize>], mut f: impl FnMut(&[usize])) {
    if lists.iter().any(Vec::is_empty) {
        return;
    }
    let mut pos = vec![0usize; lists.len()];
    let mut tuple: Vec<usize> = lists.iter().map(|l| l[0]).collect();
    loop {
        f(&tuple);
        let mut axis = lists.len();
        loop {
            if axis == 0 {
                return;
            }
            axis -= 1;
            pos[axis] += 1;
            if pos[axis] < lists[axis].len() {
                tuple[axis] = lists[axis][pos[axis]];
                break;
            }
            pos[axis] = 0;
            tuple[axis] = lists[axis][0];
        }
    }
}
