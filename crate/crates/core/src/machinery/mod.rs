//! Concrete reconstruction of the double-counting arguments that bound
//! domination-type invariants of Cartesian products.
//!
//! For a product `A^1 □ ... □ A^n` with a minimum set `D`, every factor's
//! vertex set is partitioned around a minimum certificate of that factor
//! ([`Partition`]); the block products form a grid of cells ([`BlockGrid`]).
//! A condition matrix over the product ([`ConditionMatrix`]) records how each
//! vertex is dominated, and each cell is classified by the matrix
//! propositions ([`classify_prop1`], [`classify_jmatrix`]). Cells are then
//! counted twice: once per slab along each axis ([`SlabSets`],
//! [`QualifyingBlocks`]), where each slab's count is bounded by completing its
//! projection into a set of the factor ([`pair_completion`] for the paired
//! case). [`verify_theorem`] runs the whole pipeline and records every step
//! as a checked fact in a [`Ledger`].

mod completion;
mod instance;
mod ledger;
mod matrix;
mod partition;
mod slabs;
mod theorems;

pub use completion::{pair_completion, MatchingStrategy, PairCompletion};
pub use instance::{Instance, SlabCompletion, Strength};
pub use ledger::{Fact, Ledger};
pub use matrix::{
    classify_jmatrix, classify_prop1, prop2_witness, ConditionMatrix, MatrixVariant, NdGrid, Prop1, Prop2Witness,
};
pub use partition::{build_partition, BlockGrid, Partition, PartitionMode, Representative};
pub use slabs::{qualifying_blocks, slab_sets, CellTest, QualifyingBlocks, SlabSets};
pub use theorems::{membership_transfer_check, verify_theorem, verify_theorem_with, TheoremId, TheoremVerification};

use thiserror::Error;

use crate::graph::GraphError;
use crate::solvers::{DominationKind, SolverError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MachineryError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("{kind} certificate cannot build a {mode:?} partition")]
    ModeMismatch { kind: DominationKind, mode: PartitionMode },
    #[error("vertex {0} fits no block of the partition")]
    Unassignable(usize),
    #[error("block {0} is empty; the certificate is not minimal")]
    EmptyBlock(usize),
    #[error("empty submatrix")]
    EmptySubmatrix,
    #[error("expected a {expected}-dimensional matrix, got {got}")]
    Rank { expected: usize, got: usize },
    #[error("matrix entry {value} outside {lo}..={hi}")]
    EntryOutOfRange { value: u8, lo: u8, hi: u8 },
    #[error("vertex {0} has no axis neighbor in D")]
    NoAxisNeighbor(usize),
    #[error("pairing does not cover member {0} of D")]
    PairingGap(usize),
    #[error("partitions do not match the product factors")]
    GridMismatch,
    #[error("cell {cell:?} does not satisfy {condition}")]
    CellCondition { cell: Vec<usize>, condition: &'static str },
    #[error("{0}")]
    Precondition(String),
}
