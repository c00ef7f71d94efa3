use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::closure::MetricClosure;
use crate::graph::{EddInstance, Node};
use crate::rng::partial_shuffle;
use crate::solution::{shortest_path_forest, EddSolution};
use crate::{all_pairs_shortest, Result};

/// Repeatedly feeds the server that reaches the most unserved destinations
/// within the slack (an unserved destination counts itself; ties go to the
/// smallest id) and routes those destinations along shortest paths.
///
/// `seed` is accepted for interface symmetry with the other baselines; the
/// choice is deterministic.
pub fn greedy_connectivity(instance: &EddInstance, _seed: u64) -> Result<EddSolution> {
    let closure = all_pairs_shortest(instance.network())?;
    let n = instance.node_count();
    let k = instance.slack();
    let mut plan = Plan::new(instance);
    while !plan.done() {
        let mut best = (0, 0);
        for v in 1..=n {
            let reach = plan.unserved().filter(|&d| closure.dist(v, d) <= k).count();
            if reach > best.0 {
                best = (reach, v);
            }
        }
        plan.feed(&closure, best.1);
    }
    plan.finish()
}

/// Walks the servers in a seeded random order and feeds each one that can
/// still reach an unserved destination within the slack, until every
/// destination is served.
pub fn random_distribution(instance: &EddInstance, seed: u64) -> Result<EddSolution> {
    let closure = all_pairs_shortest(instance.network())?;
    let n = instance.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<Node> = (1..=n).collect();
    partial_shuffle(&mut rng, &mut order, n);
    let mut plan = Plan::new(instance);
    for v in order {
        if plan.done() {
            break;
        }
        plan.feed(&closure, v);
    }
    plan.finish()
}

struct Plan<'a> {
    instance: &'a EddInstance,
    served: Vec<bool>,
    left: usize,
    transits: Vec<Node>,
    links: BTreeSet<(Node, Node)>,
}

impl<'a> Plan<'a> {
    fn new(instance: &'a EddInstance) -> Self {
        Self {
            instance,
            served: vec![false; instance.node_count() + 1],
            left: instance.destinations().len(),
            transits: Vec::new(),
            links: BTreeSet::new(),
        }
    }

    fn done(&self) -> bool {
        self.left == 0
    }

    fn unserved(&self) -> impl Iterator<Item = Node> + '_ {
        self.instance.destinations().iter().copied().filter(|&d| !self.served[d])
    }

    fn feed(&mut self, closure: &MetricClosure, v: Node) {
        let k = self.instance.slack();
        let reached: Vec<Node> = self.unserved().filter(|&d| closure.dist(v, d) <= k).collect();
        if reached.is_empty() {
            return;
        }
        self.transits.push(v);
        for d in reached {
            self.served[d] = true;
            self.left -= 1;
            for pair in closure.path(v, d).windows(2) {
                self.links.insert((pair[0].min(pair[1]), pair[0].max(pair[1])));
            }
        }
    }

    /// Each destination keeps a route no longer than the one it was served
    /// by, and overlapping routes are merged into a forest.
    fn finish(self) -> Result<EddSolution> {
        debug_assert!(self.done());
        let mut forest =
            shortest_path_forest(self.instance.network(), self.instance.gamma(), &self.transits, &self.links);
        forest.prune(|v| self.instance.is_destination(v));
        forest.price(self.instance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::sample;
    use crate::{validate_solution, EdgeServerNetwork};

    #[test]
    fn zero_slack_feeds_every_destination() {
        let inst = sample::ten_server_instance().with_limits(100, 100).unwrap();
        assert_eq!(greedy_connectivity(&inst, 0).unwrap().total_cost, 700);
        for seed in 0..5 {
            assert_eq!(random_distribution(&inst, seed).unwrap().total_cost, 700);
        }
    }

    #[test]
    fn ten_server_greedy() {
        let inst = sample::ten_server_instance();
        let sol = greedy_connectivity(&inst, 0).unwrap();
        assert!(validate_solution(&inst, &sol).is_feasible());
        assert_eq!(sol.total_cost, 228);
        assert_eq!(sol.c2e, BTreeSet::from([1, 6]));
        assert_eq!(sol.e2e, BTreeSet::from([(1, 2), (1, 3), (2, 4), (3, 7), (6, 9)]));
    }

    #[test]
    fn random_is_seeded() {
        let inst = sample::ten_server_instance();
        let a = random_distribution(&inst, 7).unwrap();
        assert_eq!(a, random_distribution(&inst, 7).unwrap());
        assert!(validate_solution(&inst, &a).is_feasible());
    }

    #[test]
    fn hub_needs_to_beat_the_destination() {
        // Star around hub 1; destination 2 only. The hub reaches one
        // destination, as does 2 itself, so the smaller id wins.
        let net = EdgeServerNetwork::new(3, [(1, 2, 1), (1, 3, 1)]).unwrap();
        let inst = EddInstance::new(net.clone(), [2], 10, 20).unwrap();
        let sol = greedy_connectivity(&inst, 0).unwrap();
        assert_eq!(sol.c2e, BTreeSet::from([1]));
        // With both leaves as destinations the hub serves two and wins outright.
        let inst = EddInstance::new(net, [2, 3], 10, 20).unwrap();
        let sol = greedy_connectivity(&inst, 0).unwrap();
        assert_eq!(sol.c2e, BTreeSet::from([1]));
        assert_eq!(sol.total_cost, 12);
    }
}
