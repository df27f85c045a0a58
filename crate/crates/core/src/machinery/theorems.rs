use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::completion::MatchingStrategy;
use super::instance::{AxisPlan, Instance, Layout, Strength};
use super::ledger::Ledger;
use super::matrix::{classify_jmatrix, ConditionMatrix, MatrixVariant};
use super::partition::{BlockGrid, PartitionMode};
use super::slabs::CellTest;
use super::MachineryError;
use crate::graph::{Graph, ProductGraph, VertexSet};
use crate::solvers::{domination_number, DominationCertificate, DominationKind};

/// The five product bounds, numbered 1 to 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "u8")]
pub enum TheoremId {
    /// `max(γt(G)γ(H), γ(G)γt(H)) <= 2γ(G□H)`.
    PlainTotal,
    /// `γt(G)γt(H) <= 2γt(G□H)`.
    TotalTotal,
    /// `Π γt(A^i) <= n γt(□A^i)`.
    TotalProduct,
    /// `γpr(G)γpr(H) <= 6γpr(G□H)`.
    PairedPaired,
    /// `Π γpr(A^i) <= 2^(n-1)(2n-1) γpr(□A^i)`.
    PairedProduct,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [
        Self::PlainTotal,
        Self::TotalTotal,
        Self::TotalProduct,
        Self::PairedPaired,
        Self::PairedProduct,
    ];

    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.get((n as usize).checked_sub(1)?).copied()
    }

    /// Whether the bound takes exactly two factors.
    pub fn is_binary(self) -> bool {
        matches!(self, Self::PlainTotal | Self::TotalTotal | Self::PairedPaired)
    }

    /// Domination kind of the product-side set `D`.
    pub fn product_kind(self) -> DominationKind {
        match self {
            Self::PlainTotal => DominationKind::Plain,
            Self::TotalTotal | Self::TotalProduct => DominationKind::Total,
            Self::PairedPaired | Self::PairedProduct => DominationKind::Paired,
        }
    }

    /// Multiplier on the product-side number.
    pub fn constant(self, arity: usize) -> usize {
        match self {
            Self::PlainTotal | Self::TotalTotal => 2,
            Self::TotalProduct => arity,
            Self::PairedPaired => 6,
            Self::PairedProduct => (1 << (arity - 1)) * (2 * arity - 1),
        }
    }

    pub fn check_arity(self, arity: usize) -> Result<(), MachineryError> {
        let ok = if self.is_binary() { arity == 2 } else { arity >= 2 };
        if ok {
            Ok(())
        } else {
            Err(MachineryError::Precondition(format!(
                "{self} takes {} factors, got {arity}",
                if self.is_binary() { "exactly 2" } else { "at least 2" }
            )))
        }
    }

    pub(crate) fn layout(self, arity: usize) -> Result<Layout, MachineryError> {
        self.check_arity(arity)?;
        let plan = |test, strength| AxisPlan { test, strength };
        let (modes, variant, plans) = match self {
            Self::PlainTotal => (
                vec![PartitionMode::Open, PartitionMode::Closed],
                MatrixVariant::MembershipOrAxis,
                vec![plan(CellTest::Prop1b, Strength::NonSelf), plan(CellTest::Prop1a, Strength::Plain)],
            ),
            Self::TotalTotal => (
                vec![PartitionMode::Open; 2],
                MatrixVariant::AxisOnly,
                vec![plan(CellTest::Prop1b, Strength::NonSelf), plan(CellTest::Prop1a, Strength::NonSelf)],
            ),
            Self::TotalProduct => (
                vec![PartitionMode::Open; arity],
                MatrixVariant::MinAxis,
                (0..arity)
                    .map(|t| plan(CellTest::JMatrix { matrix: 0, value: t + 1 }, Strength::NonSelf))
                    .collect(),
            ),
            Self::PairedPaired => (
                vec![PartitionMode::Paired; 2],
                MatrixVariant::MembershipOrAxis,
                vec![plan(CellTest::Prop1b, Strength::NonSelf), plan(CellTest::Prop1a, Strength::Plain)],
            ),
            Self::PairedProduct => (
                vec![PartitionMode::Paired; arity],
                MatrixVariant::PerAxisFamily,
                (0..arity)
                    .map(|t| plan(CellTest::JMatrix { matrix: t, value: t + 1 }, Strength::Plain))
                    .collect(),
            ),
        };
        Ok(Layout {
            modes,
            d_kind: self.product_kind(),
            variant,
            plans,
        })
    }
}

impl From<TheoremId> for u8 {
    fn from(id: TheoremId) -> u8 {
        id.number()
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "theorem {}", self.number())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .parse::<u8>()
            .ok()
            .and_then(Self::from_number)
            .ok_or_else(|| format!("unknown theorem {s:?}; expected 1 to 5"))
    }
}

/// Outcome of checking one bound on one tuple of factors.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremVerification {
    pub theorem: TheoremId,
    pub factors: Vec<String>,
    pub left: usize,
    pub right: usize,
    pub constant: usize,
    /// Size of the product-side minimum set.
    pub d_size: usize,
    pub ledger: Ledger,
}

impl TheoremVerification {
    /// `right - left`, negative on a violated bound.
    pub fn slack(&self) -> i64 {
        self.right as i64 - self.left as i64
    }

    pub fn pass(&self) -> bool {
        self.left <= self.right && self.ledger.all_hold()
    }
}

/// Rebuilds the counting argument of `theorem` on the product of `factors`
/// with solver-produced minimum sets and checks every step.
pub fn verify_theorem(theorem: TheoremId, factors: &[Graph]) -> Result<TheoremVerification, MachineryError> {
    verify_theorem_with(theorem, factors, MatchingStrategy::default())
}

pub fn verify_theorem_with(
    theorem: TheoremId,
    factors: &[Graph],
    strategy: MatchingStrategy,
) -> Result<TheoremVerification, MachineryError> {
    theorem.check_arity(factors.len())?;
    let n = factors.len();
    let constant = theorem.constant(n);
    let mut ledger = Ledger::new();
    let (left, d_size) = if theorem == TheoremId::PlainTotal {
        // Both orientations share one γ-set of the product, with coordinates
        // swapped for the second.
        let first = Instance::from_solvers(theorem, factors.to_vec())?.with_strategy(strategy);
        let swapped = swap_instance(&first)?.with_strategy(strategy);
        let left_a = instance_ledger(&first, &mut ledger, "gt(G)g(H)/")?;
        let left_b = instance_ledger(&swapped, &mut ledger, "g(G)gt(H)/")?;
        (left_a.max(left_b), first.d().size())
    } else {
        let inst = Instance::from_solvers(theorem, factors.to_vec())?.with_strategy(strategy);
        (instance_ledger(&inst, &mut ledger, "")?, inst.d().size())
    };
    let right = constant * d_size;
    ledger.le(format!("left <= {constant} * |D|"), left, right);
    Ok(TheoremVerification {
        theorem,
        factors: factors.iter().map(Graph::label).collect(),
        left,
        right,
        constant,
        d_size,
        ledger,
    })
}

fn swap_instance(inst: &Instance) -> Result<Instance, MachineryError> {
    let p = inst.product();
    let (g, h) = (p.factor(0).clone(), p.factor(1).clone());
    let swapped = ProductGraph::new(vec![h.clone(), g.clone()])?;
    let members = VertexSet::from_indices(
        swapped.graph().order(),
        inst.d().members().iter().map(|u| {
            swapped
                .encode(&[p.coordinate(u, 1), p.coordinate(u, 0)])
                .expect("swapped coordinates are in range")
        }),
    );
    let d = DominationCertificate::new(swapped.graph(), DominationKind::Plain, members, None)?;
    let certs = vec![
        domination_number(&h, DominationKind::Total)?.certificate,
        domination_number(&g, DominationKind::Plain)?.certificate,
    ];
    Instance::build(inst.theorem(), vec![h, g], certs, d)
}

/// Records every step for one instance and returns the product of the
/// factor numbers it bounds.
fn instance_ledger(inst: &Instance, ledger: &mut Ledger, prefix: &str) -> Result<usize, MachineryError> {
    let theorem = inst.theorem();
    let p = inst.product();
    let grid = inst.grid();
    let n = p.arity();
    let d = inst.d();
    let dn = d.size();
    let mut l = Ledger::new();

    for t in 0..n {
        let part = grid.partition(t);
        l.check(format!("axis {t}: partition valid"), part.is_valid(), "");
        let per_block = if part.mode() == PartitionMode::Paired { 2 } else { 1 };
        l.equal(
            format!("axis {t}: {} blocks cover the factor number", part.len()),
            per_block * part.len(),
            inst.factor_number(t),
        );
    }
    let cell_total: usize = grid.cells().map(|c| grid.cell_vertices(p, &c).len()).sum();
    l.equal("cells partition the product", cell_total, p.graph().order());
    let q = grid.cell_count();

    let mut tallies = Vec::with_capacity(n);
    let mut split_rhs = 0;
    let mut matched_along = vec![0usize; n];
    for &(a, _) in d.pairing() {
        matched_along[p.edge_axis(a, d.partner(a).expect("paired"))?.0] += 2;
    }
    for t in 0..n {
        let slabs = inst.slabs(t);
        let qual = inst.qualifying(t);
        l.equal(format!("axis {t}: sum |Z_p| = |D|"), slabs.z.iter().map(VertexSet::len).sum(), dn);
        if let Some(split) = &slabs.split {
            for (m, &expected) in matched_along.iter().enumerate() {
                let total = split.iter().map(|s| s[m].len()).sum();
                l.equal(format!("axis {t}: members matched along axis {m}"), total, expected);
            }
        }
        for slab in 0..slabs.len() {
            l.absorb(&format!("axis {t} slab {slab}: "), inst.slab_ledger(t, slab)?);
            if slabs.split.is_some() {
                let on = slabs.split_len(slab, t);
                split_rhs += 2 * (slabs.z[slab].len() - on) + on;
            }
        }
        let recount = grid
            .cells()
            .map(|c| qual.test.holds(inst.matrix(), p, grid, &c))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|&x| x)
            .count();
        l.equal(format!("axis {t}: tally matches a recount of cells"), qual.tally, recount);
        tallies.push(qual.tally);
    }
    let uncovered = grid
        .cells()
        .filter(|c| (0..n).all(|t| !inst.qualifying(t).qualifies(grid, c)))
        .count();
    l.equal("cells passing no axis test", uncovered, 0);
    let tally_sum: usize = tallies.iter().sum();

    let factors_product: usize = (0..n).map(|t| inst.factor_number(t)).product();
    match theorem {
        TheoremId::PlainTotal | TheoremId::TotalTotal | TheoremId::TotalProduct => {
            for (t, &d_t) in tallies.iter().enumerate() {
                l.le(format!("axis {t}: tally <= |D|"), d_t, dn);
            }
            l.chain("|Q| <= sum of tallies <= n|D|", &[q, tally_sum, n * dn]);
            l.equal("|Q| = product of factor numbers", q, factors_product);
        }
        TheoremId::PairedPaired => {
            l.equal("sum of per-slab right sides = 3|D|", split_rhs, 3 * dn);
            l.chain("2|Q| <= 2(d_H + d_G) <= 3|D|", &[2 * q, 2 * tally_sum, split_rhs]);
            l.equal("4|Q| = product of factor numbers", 4 * q, factors_product);
        }
        TheoremId::PairedProduct => {
            l.check(
                "membership transfer between the per-axis grids",
                membership_transfer_check(inst.matrix(), p, grid)?,
                "",
            );
            for (t, &d_t) in tallies.iter().enumerate() {
                l.le(format!("axis {t}: 2 tally <= 2|D| - |D_{t}|"), 2 * d_t, 2 * dn - matched_along[t]);
            }
            l.chain("2|Q| <= 2 sum of tallies <= (2n-1)|D|", &[2 * q, 2 * tally_sum, (2 * n - 1) * dn]);
            l.equal("2^n |Q| = product of factor numbers", (1 << n) * q, factors_product);
        }
    }
    let constant = theorem.constant(n);
    l.le(format!("product of factor numbers <= {constant}|D|"), factors_product, constant * dn);
    ledger.absorb(prefix, l);
    Ok(factors_product)
}

/// Checks, for the per-axis grid family, that a cell whose grid `i` is a
/// j-matrix also has grid `j` a j-matrix, and that every cell has some grid
/// `i` that is an i-matrix.
pub fn membership_transfer_check(
    f: &ConditionMatrix,
    p: &ProductGraph,
    grid: &BlockGrid,
) -> Result<bool, MachineryError> {
    if f.variant() != MatrixVariant::PerAxisFamily {
        return Err(MachineryError::Precondition("transfer check needs the per-axis grid family".into()));
    }
    let n = f.grids().len();
    for cell in grid.cells() {
        let classes = (0..n)
            .map(|i| classify_jmatrix(&f.cell_submatrix(i, p, grid, &cell)))
            .collect::<Result<Vec<_>, _>>()?;
        let transfers = classes.iter().all(|js| js.iter().all(|&j| classes[j - 1].contains(&j)));
        let diagonal = (0..n).any(|i| classes[i].contains(&(i + 1)));
        if !transfers || !diagonal {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.to_string().trim_start_matches("theorem ").parse::<TheoremId>(), Ok(id));
        }
        assert!("6".parse::<TheoremId>().is_err());
        assert!("0".parse::<TheoremId>().is_err());
        assert_eq!(TheoremId::PairedProduct.constant(3), 20);
        assert_eq!(TheoremId::PairedProduct.constant(2), 6);
        assert_eq!(serde_json::to_string(&TheoremId::TotalProduct).unwrap(), "3");
    }

    #[test]
    fn c4_total_bound_is_tight() {
        let v = verify_theorem(TheoremId::TotalTotal, &[complete(2), complete(2)]).unwrap();
        assert_eq!((v.left, v.right, v.d_size), (4, 4, 2));
        assert!(v.pass(), "{:?}", v.ledger.failures().collect::<Vec<_>>());
        let tally = |axis: usize| {
            v.ledger
                .facts()
                .iter()
                .find(|f| f.name == format!("axis {axis}: tally matches a recount of cells"))
                .unwrap()
                .detail
                .clone()
        };
        assert_eq!(tally(0), "2 = 2");
        assert_eq!(tally(1), "2 = 2");
    }

    #[test]
    fn small_examples() {
        let v = verify_theorem(TheoremId::PlainTotal, &[complete(2), path(3)]).unwrap();
        assert_eq!((v.left, v.right), (2, 4));
        assert!(v.pass());
        let v = verify_theorem(TheoremId::PairedPaired, &[complete(2), complete(2)]).unwrap();
        assert_eq!((v.left, v.right), (4, 12));
        assert!(v.pass());
        let v = verify_theorem(TheoremId::TotalProduct, &[complete(2), complete(2), complete(2)]).unwrap();
        assert!(v.pass(), "{:?}", v.ledger.failures().collect::<Vec<_>>());
        let v = verify_theorem(TheoremId::PairedProduct, &[path(3), complete(2), cycle(4)]).unwrap();
        assert!(v.pass(), "{:?}", v.ledger.failures().collect::<Vec<_>>());
    }

    #[test]
    fn arity_and_isolated_errors() {
        assert!(verify_theorem(TheoremId::TotalTotal, &[path(3)]).is_err());
        assert!(verify_theorem(TheoremId::PairedPaired, &[path(2), path(2), path(2)]).is_err());
        let lonely = Graph::edgeless(2).unwrap();
        assert!(matches!(
            verify_theorem(TheoremId::TotalTotal, &[lonely, path(2)]),
            Err(MachineryError::Solver(_))
        ));
    }

    #[test]
    fn transfer_check() {
        let inst = Instance::from_solvers(TheoremId::PairedProduct, vec![complete(2), complete(2)]).unwrap();
        assert!(membership_transfer_check(inst.matrix(), inst.product(), inst.grid()).unwrap());
        let p = ProductGraph::new(vec![path(3), path(2)]).unwrap();
        let f = ConditionMatrix::build(&p, &VertexSet::full(6), MatrixVariant::PerAxisFamily).unwrap();
        let cert = |g: &Graph| domination_number(g, DominationKind::Paired).unwrap().certificate;
        let parts = vec![
            super::super::build_partition(&path(3), &cert(&path(3)), PartitionMode::Paired).unwrap(),
            super::super::build_partition(&path(2), &cert(&path(2)), PartitionMode::Paired).unwrap(),
        ];
        let grid = BlockGrid::new(&p, parts).unwrap();
        assert!(membership_transfer_check(&f, &p, &grid).unwrap());
        let wrong = ConditionMatrix::build(&p, &VertexSet::full(6), MatrixVariant::MinAxis).unwrap();
        assert!(membership_transfer_check(&wrong, &p, &grid).is_err());
    }
}
