use serde::Serialize;

use super::completion::{pair_completion, MatchingStrategy, PairCompletion};
use super::ledger::Ledger;
use super::matrix::{ConditionMatrix, MatrixVariant};
use super::partition::{build_partition, BlockGrid, PartitionMode, Representative};
use super::slabs::{qualifying_blocks, slab_sets, CellTest, QualifyingBlocks, SlabSets};
use super::theorems::TheoremId;
use super::MachineryError;
use crate::graph::{Graph, ProductGraph, VertexSet};
use crate::solvers::{
    domination_number, is_dominating, is_total_dominating, DominationCertificate, DominationKind,
};

/// What a qualifying cell guarantees about its target-axis block `X` with
/// respect to the slab's projection `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Strength {
    /// `X ⊆ N[P]`.
    Plain,
    /// Every vertex of `X` has a neighbor in `P`.
    NonSelf,
}

/// Per-axis rule: which cells count and what they promise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct AxisPlan {
    pub test: CellTest,
    pub strength: Strength,
}

/// Shape of one theorem's argument.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub modes: Vec<PartitionMode>,
    pub d_kind: DominationKind,
    pub variant: MatrixVariant,
    pub plans: Vec<AxisPlan>,
}

/// A slab's projection completed into a set of the target factor.
#[derive(Debug, Clone, Serialize)]
pub enum SlabCompletion {
    /// Projection plus representatives of the non-qualifying blocks.
    Closed {
        projection: VertexSet,
        added: VertexSet,
        set: VertexSet,
    },
    /// Projection plus representatives outside the extended index set.
    Open {
        projection: VertexSet,
        extension: Vec<usize>,
        set: VertexSet,
    },
    Paired(PairCompletion),
}

impl SlabCompletion {
    pub fn set(&self) -> &VertexSet {
        match self {
            Self::Closed { set, .. } | Self::Open { set, .. } => set,
            Self::Paired(c) => &c.result,
        }
    }
}

/// Everything built for one theorem on one product: partitions, grid,
/// minimum set `D`, condition matrix, and per-axis slab and qualifying sets.
#[derive(Debug, Clone)]
pub struct Instance {
    theorem: TheoremId,
    product: ProductGraph,
    grid: BlockGrid,
    d: DominationCertificate,
    matrix: ConditionMatrix,
    plans: Vec<AxisPlan>,
    slabs: Vec<SlabSets>,
    qualifying: Vec<QualifyingBlocks>,
    factor_numbers: Vec<usize>,
    strategy: MatchingStrategy,
}

impl Instance {
    /// Builds the instance from explicit certificates: one per factor (of
    /// the kind its partition needs) and `d` for the product.
    pub fn build(
        theorem: TheoremId,
        factors: Vec<Graph>,
        factor_certs: Vec<DominationCertificate>,
        d: DominationCertificate,
    ) -> Result<Self, MachineryError> {
        let layout = theorem.layout(factors.len())?;
        if factor_certs.len() != factors.len() {
            return Err(MachineryError::Precondition(format!(
                "{} factors but {} certificates",
                factors.len(),
                factor_certs.len()
            )));
        }
        let partitions = factors
            .iter()
            .zip(&factor_certs)
            .zip(&layout.modes)
            .map(|((f, c), &mode)| build_partition(f, c, mode))
            .collect::<Result<Vec<_>, _>>()?;
        let factor_numbers = factors
            .iter()
            .zip(&layout.modes)
            .map(|(f, mode)| domination_number(f, mode.kind()).map(|r| r.number))
            .collect::<Result<Vec<_>, _>>()?;
        let product = ProductGraph::new(factors)?;
        let grid = BlockGrid::new(&product, partitions)?;
        if d.kind() != layout.d_kind {
            return Err(MachineryError::Precondition(format!(
                "D must be a {} certificate, got {}",
                layout.d_kind, d.kind()
            )));
        }
        let pairing = (d.kind() == DominationKind::Paired).then(|| d.pairing().to_vec());
        let d = DominationCertificate::new(product.graph(), d.kind(), d.members().clone(), pairing)?;
        let matrix = ConditionMatrix::build(&product, d.members(), layout.variant)?;
        let split = (d.kind() == DominationKind::Paired).then(|| d.pairing());
        let slabs = (0..product.arity())
            .map(|t| slab_sets(&product, d.members(), &grid, t, split))
            .collect::<Result<Vec<_>, _>>()?;
        let qualifying = layout
            .plans
            .iter()
            .enumerate()
            .map(|(t, plan)| qualifying_blocks(&matrix, &product, &grid, t, plan.test))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self {
            theorem,
            product,
            grid,
            d,
            matrix,
            plans: layout.plans,
            slabs,
            qualifying,
            factor_numbers,
            strategy: MatchingStrategy::default(),
        })
    }

    /// Builds the instance from solver-produced minimum certificates.
    pub fn from_solvers(theorem: TheoremId, factors: Vec<Graph>) -> Result<Self, MachineryError> {
        let layout = theorem.layout(factors.len())?;
        let certs = factors
            .iter()
            .zip(&layout.modes)
            .map(|(f, mode)| domination_number(f, mode.kind()).map(|r| r.certificate))
            .collect::<Result<Vec<_>, _>>()?;
        let product = ProductGraph::new(factors.clone())?;
        let d = domination_number(product.graph(), layout.d_kind)?.certificate;
        Self::build(theorem, factors, certs, d)
    }

    pub fn with_strategy(mut self, strategy: MatchingStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn theorem(&self) -> TheoremId {
        self.theorem
    }

    pub fn product(&self) -> &ProductGraph {
        &self.product
    }

    pub fn grid(&self) -> &BlockGrid {
        &self.grid
    }

    pub fn d(&self) -> &DominationCertificate {
        &self.d
    }

    pub fn matrix(&self) -> &ConditionMatrix {
        &self.matrix
    }

    pub fn slabs(&self, axis: usize) -> &SlabSets {
        &self.slabs[axis]
    }

    pub fn qualifying(&self, axis: usize) -> &QualifyingBlocks {
        &self.qualifying[axis]
    }

    /// Exact number of factor `axis` for the kind of its partition.
    pub fn factor_number(&self, axis: usize) -> usize {
        self.factor_numbers[axis]
    }

    pub fn strength(&self, axis: usize) -> Strength {
        self.plans[axis].strength
    }

    pub fn strategy(&self) -> MatchingStrategy {
        self.strategy
    }

    /// `Φ_t(Z_p)`: the target-axis image of D in slab `p`.
    pub fn slab_projection(&self, axis: usize, slab: usize) -> VertexSet {
        self.product.projection(&self.slabs[axis].z[slab], axis)
    }

    /// Checks the domination claim of a qualifying cell: its target-axis
    /// block is dominated (per the axis strength) by the slab's projection.
    pub fn claim_holds(&self, axis: usize, cell: &[usize]) -> Result<bool, MachineryError> {
        if cell.len() != self.grid.arity() || cell.iter().zip(self.grid.dims()).any(|(&c, &d)| c >= d) {
            return Err(MachineryError::Precondition(format!("{cell:?} is not a cell of the grid")));
        }
        let plan = self.plans[axis];
        if !self.qualifying[axis].qualifies(&self.grid, cell) {
            return Err(MachineryError::CellCondition {
                cell: cell.to_vec(),
                condition: match plan.test {
                    CellTest::Prop1a => "every column has a 1",
                    CellTest::Prop1b => "every row has a 0",
                    CellTest::JMatrix { .. } => "the j-matrix condition for its axis",
                },
            });
        }
        let host = self.product.factor(axis);
        let proj = self.slab_projection(axis, self.grid.slab_of_cell(axis, cell));
        let block = self.grid.partition(axis).block(cell[axis]);
        Ok(block.iter().all(|x| {
            host.neighbors(x).intersects(&proj) || (plan.strength == Strength::Plain && proj.contains(x))
        }))
    }

    /// Claim for a two-factor cell `(i, j)` whose submatrix has a 1 in every
    /// column: `D̄_j` is dominated by `Φ_H(Z_i)`.
    pub fn check_claim_domination(&self, cell: (usize, usize)) -> Result<bool, MachineryError> {
        self.two_factor_claim(1, CellTest::Prop1a, cell)
    }

    /// Claim for a two-factor cell `(i, j)` whose submatrix has a 0 in every
    /// row: each vertex of `D_i` has a neighbor in `Φ_G(Z̄_j)`.
    pub fn check_claim_nonself(&self, cell: (usize, usize)) -> Result<bool, MachineryError> {
        self.two_factor_claim(0, CellTest::Prop1b, cell)
    }

    fn two_factor_claim(&self, axis: usize, test: CellTest, cell: (usize, usize)) -> Result<bool, MachineryError> {
        if self.grid.arity() != 2 || self.plans[axis].test != test {
            return Err(MachineryError::Precondition(format!(
                "{} has no two-factor claim of this shape",
                self.theorem
            )));
        }
        self.claim_holds(axis, &[cell.0, cell.1])
    }

    /// Completes slab `i` along the last axis into a dominating set of `H`.
    pub fn build_completed_dominating_set(&self, slab: usize) -> Result<VertexSet, MachineryError> {
        self.completed_of_mode(1, slab, PartitionMode::Closed)
    }

    /// Completes slab `j` along the first axis into a total dominating set
    /// of `G`.
    pub fn build_completed_total_dominating_set(&self, slab: usize) -> Result<VertexSet, MachineryError> {
        self.completed_of_mode(0, slab, PartitionMode::Open)
    }

    fn completed_of_mode(&self, axis: usize, slab: usize, mode: PartitionMode) -> Result<VertexSet, MachineryError> {
        if self.grid.arity() != 2 || self.grid.partition(axis).mode() != mode {
            return Err(MachineryError::Precondition(format!(
                "{} has no {mode:?} completion on axis {axis}",
                self.theorem
            )));
        }
        let done = self.complete_slab(axis, slab)?;
        let ledger = self.completion_ledger(axis, slab, &done);
        let failure = ledger.failures().next().map(|f| f.to_string());
        match failure {
            Some(f) => Err(MachineryError::Precondition(format!("completion check failed: {f}"))),
            None => Ok(done.set().clone()),
        }
    }

    /// Completes the projection of slab `slab` along `axis` into a set of
    /// the target factor of the partition's kind.
    pub fn complete_slab(&self, axis: usize, slab: usize) -> Result<SlabCompletion, MachineryError> {
        if slab >= self.grid.slab_count(axis) {
            return Err(MachineryError::Precondition(format!("slab {slab} out of range on axis {axis}")));
        }
        let part = self.grid.partition(axis);
        let host = self.product.factor(axis);
        let s = &self.qualifying[axis].per_slab[slab];
        let outside = (0..part.len()).filter(|x| s.binary_search(x).is_err());
        let single = |i: usize| match part.representative(i) {
            Representative::Single(u) => u,
            Representative::Pair(..) => unreachable!("single-vertex partition"),
        };
        Ok(match part.mode() {
            PartitionMode::Closed => {
                let projection = self.slab_projection(axis, slab);
                let added = VertexSet::from_indices(host.order(), outside.map(single));
                let set = projection.union(&added);
                SlabCompletion::Closed { projection, added, set }
            }
            PartitionMode::Open => {
                let projection = self.slab_projection(axis, slab);
                let mut extension = s.clone();
                extension.extend(outside.clone().filter(|&i| projection.contains(single(i))));
                extension.sort_unstable();
                let rest = outside.filter(|&i| !projection.contains(single(i))).map(single);
                let set = projection.union(&VertexSet::from_indices(host.order(), rest));
                SlabCompletion::Open { projection, extension, set }
            }
            PartitionMode::Paired => {
                let split = self.slabs[axis].split.as_ref().expect("paired instances carry a split");
                let mut off_axis = VertexSet::new(self.product.graph().order());
                for (m, z) in split[slab].iter().enumerate() {
                    if m != axis {
                        off_axis.union_with(z);
                    }
                }
                let a = self.product.projection(&off_axis, axis);
                let b = self.product.projection(&split[slab][axis], axis);
                let mut c = VertexSet::new(host.order());
                let mut pairs_c = Vec::new();
                for i in outside {
                    if let Representative::Pair(x, y) = part.representative(i) {
                        c.insert(x);
                        c.insert(y);
                        pairs_c.push((x, y));
                    }
                }
                SlabCompletion::Paired(pair_completion(host, &a, &b, &c, &pairs_c, self.strategy)?)
            }
        })
    }

    /// Checked facts for one slab: every qualifying cell meets its claim,
    /// and the completion yields the per-slab counting bound.
    pub fn slab_ledger(&self, axis: usize, slab: usize) -> Result<Ledger, MachineryError> {
        let mut ledger = Ledger::new();
        let s = &self.qualifying[axis].per_slab[slab];
        let mut failing = Vec::new();
        for &x in s {
            let cell = self.grid.cell_in_slab(axis, slab, x);
            if !self.claim_holds(axis, &cell)? {
                failing.push(cell);
            }
        }
        let what = match self.plans[axis].strength {
            Strength::Plain => "dominated",
            Strength::NonSelf => "dominated by neighbors",
        };
        let detail = if failing.is_empty() {
            format!("{} cells", s.len())
        } else {
            format!("fails at {failing:?}")
        };
        ledger.check(format!("qualifying blocks {what} by the projection"), failing.is_empty(), detail);
        let done = self.complete_slab(axis, slab)?;
        ledger.absorb("", self.completion_ledger(axis, slab, &done));
        Ok(ledger)
    }

    fn completion_ledger(&self, axis: usize, slab: usize, done: &SlabCompletion) -> Ledger {
        let mut l = Ledger::new();
        let host = self.product.factor(axis);
        let z = &self.slabs[axis].z[slab];
        let s = self.qualifying[axis].per_slab[slab].len();
        let k = self.grid.dims()[axis];
        let number = self.factor_number(axis);
        match done {
            SlabCompletion::Closed { projection, added, set } => {
                l.check("completion is dominating", is_dominating(host, set), set.to_string());
                l.check("projection misses the added representatives", !projection.intersects(added), "");
                l.le("gamma <= |completion|", number, set.len());
                l.chain("|S| <= |projection| <= |Z|", &[s, projection.len(), z.len()]);
            }
            SlabCompletion::Open { projection, extension, set } => {
                l.check("completion is total dominating", is_total_dominating(host, set), set.to_string());
                l.le("gamma_t <= |completion|", number, set.len());
                l.chain(
                    "|S| <= |extension| <= |projection| <= |Z|",
                    &[s, extension.len(), projection.len(), z.len()],
                );
            }
            SlabCompletion::Paired(c) => {
                let on_axis = self.slabs[axis].split_len(slab, axis);
                let off_axis = z.len() - on_axis;
                l.check("A, B, C together dominate", is_dominating(host, &c.initial), c.initial.to_string());
                l.check("completion is paired dominating", c.paired_dominating, c.result.to_string());
                l.check(
                    "no removal loses domination",
                    c.broken_removals.is_empty(),
                    format!("{:?}", c.broken_removals),
                );
                l.le("gamma_pr <= |completion|", number, c.result.len());
                l.le("|completion| <= 2|A| + |M1| + 2|M2|", c.result.len(), c.bound());
                l.le("|M1| + 2|M2| <= |C| + |Z on axis|", c.matched_weight(), c.c.len() + on_axis);
                l.equal("|C| = 2(blocks - |S|)", c.c.len(), 2 * (k - s));
                l.le("|A| <= |Z off axis|", c.a.len(), off_axis);
                l.le("2|S| <= 2|Z off axis| + |Z on axis|", 2 * s, 2 * off_axis + on_axis);
            }
        }
        l
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    fn c4_instance() -> Instance {
        let inst = Instance::from_solvers(TheoremId::TotalTotal, vec![complete(2), complete(2)]).unwrap();
        assert_eq!(inst.d().members().to_vec(), vec![0, 1]);
        inst
    }

    #[test]
    fn c4_claims() {
        let inst = c4_instance();
        assert_eq!(inst.check_claim_domination((1, 0)), Ok(true));
        assert_eq!(inst.check_claim_domination((1, 1)), Ok(true));
        assert!(matches!(
            inst.check_claim_domination((0, 0)),
            Err(MachineryError::CellCondition { .. })
        ));
        assert_eq!(inst.check_claim_nonself((0, 0)), Ok(true));
        assert_eq!(inst.check_claim_nonself((0, 1)), Ok(true));
        assert!(inst.check_claim_nonself((1, 0)).is_err());
    }

    #[test]
    fn c4_total_completions() {
        let inst = c4_instance();
        match inst.complete_slab(0, 0).unwrap() {
            SlabCompletion::Open { projection, extension, set } => {
                assert_eq!(projection.to_vec(), vec![0]);
                assert_eq!(extension, vec![0]);
                assert_eq!(set.to_vec(), vec![0, 1]);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(inst.build_completed_total_dominating_set(1).unwrap().to_vec(), vec![0, 1]);
        // Axis 1 is open here, so there is no closed completion.
        assert!(inst.build_completed_dominating_set(0).is_err());
        for axis in 0..2 {
            for slab in 0..2 {
                let l = inst.slab_ledger(axis, slab).unwrap();
                assert!(l.all_hold(), "{:?}", l.failures().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn closed_completions() {
        // K2 □ K2 with a plain γ-set; H side uses the closed partition.
        let inst = Instance::from_solvers(TheoremId::PlainTotal, vec![complete(2), complete(2)]).unwrap();
        let d = inst.d().members().to_vec();
        assert_eq!(d, vec![0, 1]);
        for slab in 0..inst.grid().slab_count(1) {
            let set = inst.build_completed_dominating_set(slab).unwrap();
            assert!(is_dominating(&complete(2), &set));
        }
    }

    #[test]
    fn paired_completions_hold() {
        let inst = Instance::from_solvers(TheoremId::PairedPaired, vec![path(4), cycle(5)]).unwrap();
        for axis in 0..2 {
            for slab in 0..inst.grid().slab_count(axis) {
                let l = inst.slab_ledger(axis, slab).unwrap();
                assert!(l.all_hold(), "{:?}", l.failures().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn rejects_wrong_certificates() {
        let k2 = complete(2);
        let plain = domination_number(&k2, DominationKind::Plain).unwrap().certificate;
        let total = domination_number(&k2, DominationKind::Total).unwrap().certificate;
        let p = ProductGraph::new(vec![k2.clone(), k2.clone()]).unwrap();
        let d = domination_number(p.graph(), DominationKind::Total).unwrap().certificate;
        let err = Instance::build(TheoremId::TotalTotal, vec![k2.clone(), k2.clone()], vec![plain, total.clone()], d);
        assert!(matches!(err, Err(MachineryError::ModeMismatch { .. })));
        let plain_d = domination_number(p.graph(), DominationKind::Plain).unwrap().certificate;
        let err = Instance::build(TheoremId::TotalTotal, vec![k2.clone(), k2], vec![total.clone(), total], plain_d);
        assert!(matches!(err, Err(MachineryError::Precondition(_))));
    }
}
