use std::collections::HashMap;

use serde::Serialize;

use super::matrix::{classify_jmatrix, classify_prop1, ConditionMatrix};
use super::partition::BlockGrid;
use super::MachineryError;
use crate::graph::{ProductGraph, VertexSet};

/// Members of D grouped by slab along a target axis. A slab fixes one block
/// on every axis except the target axis.
#[derive(Debug, Clone)]
pub struct SlabSets {
    pub target_axis: usize,
    /// `z[p]`: members of D in slab `p`.
    pub z: Vec<VertexSet>,
    /// When a pairing is given, `split[p][m]` holds the members of `z[p]`
    /// whose pairing edge runs along axis `m`.
    pub split: Option<Vec<Vec<VertexSet>>>,
}

impl SlabSets {
    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// Size of the members in slab `p` matched along `axis`.
    pub fn split_len(&self, p: usize, axis: usize) -> usize {
        self.split.as_ref().map_or(0, |s| s[p][axis].len())
    }
}

pub fn slab_sets(
    p: &ProductGraph,
    d: &VertexSet,
    grid: &BlockGrid,
    target_axis: usize,
    pairing: Option<&[(usize, usize)]>,
) -> Result<SlabSets, MachineryError> {
    p.check_axis(target_axis)?;
    let order = p.graph().order();
    p.graph().check_set(d)?;
    let slabs = grid.slab_count(target_axis);
    let mut z = vec![VertexSet::new(order); slabs];
    let mut split = pairing.map(|_| vec![vec![VertexSet::new(order); p.arity()]; slabs]);
    let partner: Option<HashMap<usize, usize>> =
        pairing.map(|pairs| pairs.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect());
    for u in d {
        let slab = grid.slab_of_cell(target_axis, &grid.cell_of(p, u));
        z[slab].insert(u);
        if let (Some(split), Some(partner)) = (split.as_mut(), partner.as_ref()) {
            let v = *partner.get(&u).ok_or(MachineryError::PairingGap(u))?;
            let axis = p.edge_axis(u, v)?.0;
            split[slab][axis].insert(u);
        }
    }
    Ok(SlabSets {
        target_axis,
        z,
        split,
    })
}

/// Condition a cell must meet to count for its target-axis block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CellTest {
    /// Every column of the binary submatrix contains a 1.
    Prop1a,
    /// Every row of the binary submatrix contains a 0.
    Prop1b,
    /// Grid `matrix` restricted to the cell is a `value`-matrix.
    JMatrix { matrix: usize, value: usize },
}

impl CellTest {
    pub fn holds(self, f: &ConditionMatrix, p: &ProductGraph, grid: &BlockGrid, cell: &[usize]) -> Result<bool, MachineryError> {
        Ok(match self {
            Self::Prop1a => classify_prop1(&f.cell_submatrix(0, p, grid, cell))?.a,
            Self::Prop1b => classify_prop1(&f.cell_submatrix(0, p, grid, cell))?.b,
            Self::JMatrix { matrix, value } => {
                classify_jmatrix(&f.cell_submatrix(matrix, p, grid, cell))?.contains(&value)
            }
        })
    }

    pub fn label(self) -> String {
        match self {
            Self::Prop1a => "every column has a 1".into(),
            Self::Prop1b => "every row has a 0".into(),
            Self::JMatrix { matrix, value } => format!("grid {} is a {value}-matrix", matrix + 1),
        }
    }
}

/// For each slab along the target axis, the target-axis blocks whose cell
/// passes the test.
#[derive(Debug, Clone)]
pub struct QualifyingBlocks {
    pub target_axis: usize,
    pub test: CellTest,
    /// `per_slab[p]`: qualifying block indices, ascending.
    pub per_slab: Vec<Vec<usize>>,
    /// Sum of the per-slab counts.
    pub tally: usize,
}

impl QualifyingBlocks {
    pub fn qualifies(&self, grid: &BlockGrid, cell: &[usize]) -> bool {
        self.per_slab[grid.slab_of_cell(self.target_axis, cell)]
            .binary_search(&cell[self.target_axis])
            .is_ok()
    }
}

pub fn qualifying_blocks(
    f: &ConditionMatrix,
    p: &ProductGraph,
    grid: &BlockGrid,
    target_axis: usize,
    test: CellTest,
) -> Result<QualifyingBlocks, MachineryError> {
    p.check_axis(target_axis)?;
    let per_slab = (0..grid.slab_count(target_axis))
        .map(|slab| {
            let mut s = Vec::new();
            for block in 0..grid.dims()[target_axis] {
                if test.holds(f, p, grid, &grid.cell_in_slab(target_axis, slab, block))? {
                    s.push(block);
                }
            }
            Ok(s)
        })
        .collect::<Result<Vec<_>, MachineryError>>()?;
    let tally = per_slab.iter().map(Vec::len).sum();
    Ok(QualifyingBlocks {
        target_axis,
        test,
        per_slab,
        tally,
    })
}
