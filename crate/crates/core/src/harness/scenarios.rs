use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::families::{generate_family, FamilySpec};
use super::HarnessError;
use crate::graph::Graph;
use crate::machinery::{Instance, PairCompletion, SlabCompletion, TheoremId};

/// One pair-completion run taken from a random paired-bound instance.
#[derive(Debug, Clone)]
pub struct PairScenario {
    /// Target factor.
    pub host: Graph,
    /// The other factor.
    pub other: Graph,
    pub axis: usize,
    pub slab: usize,
    pub completion: PairCompletion,
}

impl PairScenario {
    /// Whether the output is paired dominating, within its size bound, and
    /// no removal lost domination.
    pub fn holds(&self) -> bool {
        let c = &self.completion;
        c.paired_dominating && c.within_bound && c.broken_removals.is_empty()
    }
}

/// Draws `count` scenarios: a random target factor of order 2 to 8, a
/// random second factor keeping the product at most 24 vertices, and a
/// random slab of the resulting paired instance. The target factor takes
/// the slab's `A`, `B`, `C` sets through the completion.
pub fn pair_scenarios(seed: u64, count: usize) -> Result<Vec<PairScenario>, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let draw = |rng: &mut ChaCha8Rng, max: usize| -> Result<Graph, HarnessError> {
        let order = rng.gen_range(2..=max);
        let probability = rng.gen_range(20..=80) as f64 / 100.0;
        generate_family(&FamilySpec::random(order, probability, rng.gen()))
    };
    while out.len() < count {
        let host = draw(&mut rng, 8)?;
        let other = draw(&mut rng, (24 / host.order()).max(2))?;
        let axis = rng.gen_range(0..2);
        let factors = if axis == 0 {
            vec![host.clone(), other.clone()]
        } else {
            vec![other.clone(), host.clone()]
        };
        let inst = Instance::from_solvers(TheoremId::PairedPaired, factors)?;
        let slab = rng.gen_range(0..inst.grid().slab_count(axis));
        match inst.complete_slab(axis, slab)? {
            SlabCompletion::Paired(completion) => out.push(PairScenario {
                host,
                other,
                axis,
                slab,
                completion,
            }),
            _ => unreachable!("paired instances complete into paired sets"),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenarios_are_reproducible_and_hold() {
        let a = pair_scenarios(5, 10).unwrap();
        let b = pair_scenarios(5, 10).unwrap();
        assert_eq!(a.len(), 10);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.host, y.host);
            assert_eq!(x.completion.result, y.completion.result);
            assert!(x.holds());
        }
    }
}
