use serde::Serialize;

use super::partition::{for_each_tuple, BlockGrid};
use super::MachineryError;
use crate::graph::{ProductGraph, VertexSet};

/// Dense n-dimensional array of small integers, last axis varying fastest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NdGrid {
    dims: Vec<usize>,
    data: Vec<u8>,
}

impl NdGrid {
    pub fn new(dims: Vec<usize>, data: Vec<u8>) -> Result<Self, MachineryError> {
        if dims.iter().product::<usize>() != data.len() {
            return Err(MachineryError::Precondition(format!(
                "grid of shape {dims:?} needs {} entries, got {}",
                dims.iter().product::<usize>(),
                data.len()
            )));
        }
        Ok(Self { dims, data })
    }

    /// Two-dimensional grid from rows.
    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self, MachineryError> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(MachineryError::Precondition("ragged rows".into()));
        }
        Self::new(vec![rows.len(), width], rows.concat())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, index: &[usize]) -> u8 {
        let flat = index.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| acc * d + i);
        self.data[flat]
    }

    /// Iterates `(index, value)` pairs in storage order.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, u8)> + '_ {
        self.data.iter().enumerate().map(move |(flat, &v)| {
            let mut index = vec![0; self.rank()];
            let mut rest = flat;
            for axis in (0..self.rank()).rev() {
                index[axis] = rest % self.dims[axis];
                rest /= self.dims[axis];
            }
            (index, v)
        })
    }

    /// For each position along `axis`, whether that slice contains `value`.
    pub fn slices_containing(&self, axis: usize, value: u8) -> Vec<bool> {
        let mut seen = vec![false; self.dims[axis]];
        for (index, v) in self.entries() {
            if v == value {
                seen[index[axis]] = true;
            }
        }
        seen
    }

    fn check_range(&self, lo: u8, hi: u8) -> Result<(), MachineryError> {
        if self.is_empty() {
            return Err(MachineryError::EmptySubmatrix);
        }
        match self.data.iter().find(|&&v| v < lo || v > hi) {
            Some(&value) => Err(MachineryError::EntryOutOfRange { value, lo, hi }),
            None => Ok(()),
        }
    }
}

/// Which binary properties a matrix has: (a) every column contains a 1,
/// (b) every row contains a 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Prop1 {
    pub a: bool,
    pub b: bool,
}

impl Prop1 {
    pub fn is_empty(self) -> bool {
        !self.a && !self.b
    }
}

pub fn classify_prop1(sub: &NdGrid) -> Result<Prop1, MachineryError> {
    if sub.rank() != 2 {
        return Err(MachineryError::Rank {
            expected: 2,
            got: sub.rank(),
        });
    }
    sub.check_range(0, 1)?;
    Ok(Prop1 {
        a: sub.slices_containing(1, 1).into_iter().all(|x| x),
        b: sub.slices_containing(0, 0).into_iter().all(|x| x),
    })
}

/// All `j` (1-based) for which the n-ary grid is a j-matrix: every slice
/// with axis `j - 1` fixed contains the value `j`. Here `n` is the rank.
pub fn classify_jmatrix(sub: &NdGrid) -> Result<Vec<usize>, MachineryError> {
    let n = sub.rank();
    sub.check_range(1, n as u8)?;
    Ok((1..=n)
        .filter(|&j| sub.slices_containing(j - 1, j as u8).into_iter().all(|x| x))
        .collect())
}

/// Constructive evidence that a grid is a j-matrix for some j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Prop2Witness {
    /// The grid is a j-matrix for this `j < n`.
    Direct(usize),
    /// No `j < n` works. `prefix[j - 1]` is a slice along axis `j - 1`
    /// without the value `j`; the fiber at that prefix holds only `n`, and
    /// every slice along the last axis crosses it, so the grid is an
    /// n-matrix.
    Fiber { prefix: Vec<usize> },
}

impl Prop2Witness {
    /// The `j` this witness certifies.
    pub fn value(&self, rank: usize) -> usize {
        match self {
            Self::Direct(j) => *j,
            Self::Fiber { .. } => rank,
        }
    }
}

/// Follows the existence argument: try each `j < n`, collecting a failing
/// slice for every miss; if all miss, the fiber through those slices is
/// checked to hold only `n`.
pub fn prop2_witness(sub: &NdGrid) -> Result<Prop2Witness, MachineryError> {
    let n = sub.rank();
    sub.check_range(1, n as u8)?;
    let mut prefix = Vec::with_capacity(n.saturating_sub(1));
    for j in 1..n {
        match sub.slices_containing(j - 1, j as u8).iter().position(|&x| !x) {
            None => return Ok(Prop2Witness::Direct(j)),
            Some(i) => prefix.push(i),
        }
    }
    let fiber_ok = (0..sub.dims[n - 1]).all(|last| {
        let mut index = prefix.clone();
        index.push(last);
        sub.get(&index) == n as u8
    });
    if !fiber_ok {
        return Err(MachineryError::Precondition(format!(
            "fiber at {prefix:?} holds a value below {n}"
        )));
    }
    Ok(Prop2Witness::Fiber { prefix })
}

/// Rule used to fill the condition matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MatrixVariant {
    /// 1 iff the vertex is in D or has a neighbor in D along the last axis.
    MembershipOrAxis,
    /// 1 iff the vertex has a neighbor in D along the last axis.
    AxisOnly,
    /// Smallest 1-based axis along which the vertex has a neighbor in D.
    MinAxis,
    /// One grid per axis `i`: `i` on members of D, [`MatrixVariant::MinAxis`]
    /// elsewhere.
    PerAxisFamily,
}

/// Condition matrices over a product's vertex grid. Grid entries are indexed
/// by factor coordinates, so the flat position of an entry equals the
/// product vertex index.
#[derive(Debug, Clone)]
pub struct ConditionMatrix {
    variant: MatrixVariant,
    grids: Vec<NdGrid>,
}

impl ConditionMatrix {
    pub fn build(p: &ProductGraph, d: &VertexSet, variant: MatrixVariant) -> Result<Self, MachineryError> {
        let g = p.graph();
        if d.universe() != g.order() {
            return Err(MachineryError::Precondition(format!(
                "set over {} vertices used with a product of order {}",
                d.universe(),
                g.order()
            )));
        }
        let n = p.arity();
        let dims = p.factor_orders();
        let last = n - 1;
        let axis_hit = |u: usize, axis: usize| p.axis_neighbors(u, axis).intersects(d);
        let min_axis = |u: usize| {
            (0..n)
                .find(|&axis| axis_hit(u, axis))
                .map(|axis| axis as u8 + 1)
                .ok_or(MachineryError::NoAxisNeighbor(u))
        };
        let binary = |f: &dyn Fn(usize) -> bool| -> Result<Vec<NdGrid>, MachineryError> {
            if n != 2 {
                return Err(MachineryError::Rank { expected: 2, got: n });
            }
            Ok(vec![NdGrid::new(dims.clone(), (0..g.order()).map(|u| f(u) as u8).collect())?])
        };
        let grids = match variant {
            MatrixVariant::MembershipOrAxis => binary(&|u| d.contains(u) || axis_hit(u, last))?,
            MatrixVariant::AxisOnly => binary(&|u| axis_hit(u, last))?,
            MatrixVariant::MinAxis => {
                let data = (0..g.order()).map(min_axis).collect::<Result<_, _>>()?;
                vec![NdGrid::new(dims, data)?]
            }
            MatrixVariant::PerAxisFamily => {
                let base: Vec<u8> = (0..g.order())
                    .map(|u| if d.contains(u) { Ok(0) } else { min_axis(u) })
                    .collect::<Result<_, _>>()?;
                (0..n)
                    .map(|i| {
                        let data = base.iter().map(|&v| if v == 0 { i as u8 + 1 } else { v }).collect();
                        NdGrid::new(dims.clone(), data)
                    })
                    .collect::<Result<_, _>>()?
            }
        };
        Ok(Self { variant, grids })
    }

    pub fn variant(&self) -> MatrixVariant {
        self.variant
    }

    pub fn grids(&self) -> &[NdGrid] {
        &self.grids
    }

    /// Entry of grid `which` at product vertex `u`.
    pub fn entry(&self, which: usize, u: usize) -> u8 {
        self.grids[which].data[u]
    }

    /// Restriction of grid `which` to the vertices of one grid cell, indexed
    /// by position within each block.
    pub fn cell_submatrix(&self, which: usize, p: &ProductGraph, grid: &BlockGrid, cell: &[usize]) -> NdGrid {
        let lists: Vec<Vec<usize>> = cell
            .iter()
            .enumerate()
            .map(|(axis, &b)| grid.partition(axis).block(b).to_vec())
            .collect();
        let dims = lists.iter().map(Vec::len).collect();
        let mut data = Vec::new();
        for_each_tuple(&lists, |t| {
            data.push(self.entry(which, p.encode(t).expect("block members are factor vertices")));
        });
        NdGrid { dims, data }
    }
}
