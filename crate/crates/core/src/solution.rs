//! Pricing and feasibility checking of distribution plans.

use alloc::collections::{BTreeMap, BTreeSet, BinaryHeap};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::graph::{EddInstance, Node, Topology, Weight, CLOUD};
use crate::{EddError, Result};

/// A distribution plan: which servers the cloud feeds directly and which
/// links carry data onward.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EddSolution {
    /// Initial transit servers, fed straight from the cloud.
    pub c2e: BTreeSet<Node>,
    /// Directed `(parent, child)` edge-to-edge transfers.
    pub e2e: BTreeSet<(Node, Node)>,
    /// Path length from the cloud for every covered server.
    pub depth: BTreeMap<Node, Weight>,
    pub cost_c2e: Weight,
    pub cost_e2e: Weight,
    pub total_cost: Weight,
}

impl EddSolution {
    pub fn covers(&self, v: Node) -> bool {
        self.depth.contains_key(&v)
    }

    /// Parent of every covered node (`CLOUD` for transits).
    pub fn parents(&self) -> BTreeMap<Node, Node> {
        let mut out: BTreeMap<Node, Node> = self.c2e.iter().map(|&v| (v, CLOUD)).collect();
        out.extend(self.e2e.iter().map(|&(p, c)| (c, p)));
        out
    }
}

/// Prices a candidate plan and derives depths by walking down from the
/// cloud. The length budget is not checked here; see [`validate_solution`].
pub fn solution_cost(
    instance: &EddInstance,
    c2e: impl IntoIterator<Item = Node>,
    e2e: impl IntoIterator<Item = (Node, Node)>,
) -> Result<EddSolution> {
    let net = instance.network();
    let n = net.node_count();
    let c2e: BTreeSet<Node> = c2e.into_iter().collect();
    let e2e: BTreeSet<(Node, Node)> = e2e.into_iter().collect();
    let mut has_parent = vec![false; n + 1];
    for &v in &c2e {
        if v == CLOUD || v > n {
            return Err(EddError::NodeOutOfRange { node: v, node_count: n });
        }
        has_parent[v] = true;
    }
    let mut children: BTreeMap<Node, Vec<(Node, Weight)>> = BTreeMap::new();
    let mut cost_e2e = 0;
    for &(p, c) in &e2e {
        let w = net.weight(p, c).ok_or(EddError::UnknownEdge(p, c))?;
        if has_parent[c] {
            return Err(EddError::NotAForest(c));
        }
        has_parent[c] = true;
        cost_e2e += w;
        children.entry(p).or_default().push((c, w));
    }
    let mut depth = BTreeMap::new();
    let mut stack: Vec<(Node, Weight)> = c2e.iter().map(|&v| (v, instance.gamma())).collect();
    while let Some((v, d)) = stack.pop() {
        depth.insert(v, d);
        if let Some(kids) = children.get(&v) {
            stack.extend(kids.iter().map(|&(c, w)| (c, d + w)));
        }
    }
    let cost_c2e = instance.gamma() * c2e.len() as Weight;
    Ok(EddSolution { c2e, e2e, depth, cost_c2e, cost_e2e, total_cost: cost_c2e + cost_e2e })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    NodeOutOfRange(Node),
    UnknownEdge(Node, Node),
    MultipleParents(Node),
    /// Node takes part in the plan but is not reachable from the cloud.
    Unrooted(Node),
    DepthMismatch { node: Node, expected: Option<Weight>, found: Option<Weight> },
    CostMismatch { field: &'static str, expected: Weight, found: Weight },
    Uncovered(Node),
    DepthOverflow { node: Node, depth: Weight, limit: Weight },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FeasibilityReport {
    pub violations: Vec<Violation>,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every structural, accounting and budget rule a plan must obey.
pub fn validate_solution(instance: &EddInstance, sol: &EddSolution) -> FeasibilityReport {
    let net = instance.network();
    let n = net.node_count();
    let mut violations = Vec::new();
    let mut parent: Vec<Option<(Node, Weight)>> = vec![None; n + 1];
    let mut multi = BTreeSet::new();
    let mut assign = |v: Node, p: Node, w: Weight, parent: &mut Vec<Option<(Node, Weight)>>| {
        if parent[v].is_some() {
            multi.insert(v);
        } else {
            parent[v] = Some((p, w));
        }
    };
    for &v in &sol.c2e {
        if v == CLOUD || v > n {
            violations.push(Violation::NodeOutOfRange(v));
            continue;
        }
        assign(v, CLOUD, instance.gamma(), &mut parent);
    }
    let mut cost_e2e = 0;
    for &(p, c) in &sol.e2e {
        match net.weight(p, c).filter(|_| p != CLOUD && c != CLOUD && p <= n && c <= n) {
            Some(w) => {
                cost_e2e += w;
                assign(c, p, w, &mut parent);
            }
            None => violations.push(Violation::UnknownEdge(p, c)),
        }
    }
    violations.extend(multi.into_iter().map(Violation::MultipleParents));

    // Depth by walking each node up to the cloud; a walk longer than n is a cycle.
    let mut depth: Vec<Option<Weight>> = vec![None; n + 1];
    for v in 1..=n {
        if parent[v].is_none() {
            continue;
        }
        let mut chain = Vec::new();
        let mut cur = v;
        let mut base = None;
        while chain.len() <= n {
            if let Some(d) = depth[cur] {
                base = Some(d);
                break;
            }
            chain.push(cur);
            match parent[cur] {
                Some((CLOUD, _)) => {
                    base = Some(0);
                    break;
                }
                Some((p, _)) => cur = p,
                None => break,
            }
        }
        if let Some(mut d) = base {
            for &x in chain.iter().rev() {
                d += parent[x].expect("chain nodes have parents").1;
                depth[x] = Some(d);
            }
        }
    }
    for v in 1..=n {
        if parent[v].is_some() && depth[v].is_none() {
            violations.push(Violation::Unrooted(v));
        }
        let found = sol.depth.get(&v).copied();
        if found != depth[v] {
            violations.push(Violation::DepthMismatch { node: v, expected: depth[v], found });
        }
    }
    if let Some((&v, _)) = sol.depth.iter().find(|(&v, _)| v == CLOUD || v > n) {
        violations.push(Violation::NodeOutOfRange(v));
    }

    let cost_c2e = instance.gamma() * sol.c2e.len() as Weight;
    for (field, expected, found) in [
        ("c2e", cost_c2e, sol.cost_c2e),
        ("e2e", cost_e2e, sol.cost_e2e),
        ("total", sol.cost_c2e + sol.cost_e2e, sol.total_cost),
    ] {
        if expected != found {
            violations.push(Violation::CostMismatch { field, expected, found });
        }
    }

    for &r in instance.destinations() {
        match depth[r] {
            None => violations.push(Violation::Uncovered(r)),
            Some(d) if d > instance.l_limit() => violations.push(Violation::DepthOverflow {
                node: r,
                depth: d,
                limit: instance.l_limit(),
            }),
            Some(_) => {}
        }
    }
    FeasibilityReport { violations }
}

/// Parent pointers over `0..=n`; `Some(CLOUD)` marks a transit server.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Forest {
    pub parent: Vec<Option<Node>>,
}

impl Forest {
    pub fn new(node_count: usize) -> Self {
        Self { parent: vec![None; node_count + 1] }
    }

    /// Drops every node whose subtree holds no destination.
    pub fn prune(&mut self, is_destination: impl Fn(Node) -> bool) {
        let n = self.parent.len() - 1;
        let mut needed = vec![false; n + 1];
        for v in 1..=n {
            if !is_destination(v) || self.parent[v].is_none() {
                continue;
            }
            let mut cur = v;
            while cur != CLOUD && !needed[cur] {
                needed[cur] = true;
                cur = self.parent[cur].expect("covered chains reach the cloud");
            }
        }
        for v in 1..=n {
            if !needed[v] {
                self.parent[v] = None;
            }
        }
    }

    pub fn arcs(&self) -> (Vec<Node>, Vec<(Node, Node)>) {
        let mut c2e = Vec::new();
        let mut e2e = Vec::new();
        for (v, p) in self.parent.iter().enumerate().skip(1) {
            match *p {
                Some(CLOUD) => c2e.push(v),
                Some(p) => e2e.push((p, v)),
                None => {}
            }
        }
        (c2e, e2e)
    }

    pub fn price(&self, instance: &EddInstance) -> Result<EddSolution> {
        let (c2e, e2e) = self.arcs();
        solution_cost(instance, c2e, e2e)
    }
}

/// Shortest-path forest from the cloud inside the subgraph formed by the
/// given transits (cloud links of length `gamma`) and undirected `links`.
///
/// Every node ends up no deeper than along any route inside that subgraph,
/// and the forest never costs more than the subgraph itself.
pub(crate) fn shortest_path_forest<T: Topology + ?Sized>(
    topology: &T,
    gamma: Weight,
    transits: &[Node],
    links: &BTreeSet<(Node, Node)>,
) -> Forest {
    let n = topology.node_count();
    let mut adj: Vec<Vec<(Node, Weight)>> = vec![Vec::new(); n + 1];
    for &(a, b) in links {
        let w = topology.weight(a, b).expect("links come from the topology");
        adj[a].push((b, w));
        adj[b].push((a, w));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let mut dist = vec![Weight::MAX; n + 1];
    let mut forest = Forest::new(n);
    let mut heap = BinaryHeap::new();
    for &t in transits {
        if gamma < dist[t] {
            dist[t] = gamma;
            forest.parent[t] = Some(CLOUD);
            heap.push(Reverse((gamma, t)));
        }
    }
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            if d + w < dist[v] {
                dist[v] = d + w;
                forest.parent[v] = Some(u);
                heap.push(Reverse((d + w, v)));
            }
        }
    }
    forest
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::sample;

    fn optimal_plan() -> EddSolution {
        let inst = sample::ten_server_instance();
        solution_cost(&inst, [2, 7], [(2, 1), (2, 4), (4, 10), (10, 9), (7, 3), (7, 6)]).unwrap()
    }

    #[test]
    fn prices_the_ip_plan() {
        let inst = sample::ten_server_instance();
        let sol = optimal_plan();
        assert_eq!((sol.cost_c2e, sol.cost_e2e, sol.total_cost), (200, 19, 219));
        assert!(validate_solution(&inst, &sol).is_feasible());
    }

    #[test]
    fn prices_the_heuristic_plan() {
        let inst = sample::ten_server_instance();
        let sol = solution_cost(&inst, [1, 9], [(1, 2), (1, 3), (2, 4), (3, 7), (9, 6)]).unwrap();
        assert_eq!(sol.total_cost, 228);
        assert!(validate_solution(&inst, &sol).is_feasible());
    }

    #[test]
    fn all_direct() {
        let inst = sample::ten_server_instance();
        let sol = solution_cost(&inst, inst.destinations().to_vec(), []).unwrap();
        assert_eq!(sol.total_cost, 700);
        assert!(validate_solution(&inst, &sol).is_feasible());
    }

    #[test]
    fn two_parents_is_an_error() {
        let inst = sample::ten_server_instance();
        assert_eq!(solution_cost(&inst, [2], [(2, 1), (3, 1)]), Err(EddError::NotAForest(1)));
        assert_eq!(solution_cost(&inst, [1], [(2, 1)]), Err(EddError::NotAForest(1)));
        assert_eq!(solution_cost(&inst, [1], [(1, 9)]), Err(EddError::UnknownEdge(1, 9)));
    }

    #[test]
    fn empty_plan_is_infeasible() {
        let inst = sample::ten_server_instance();
        let report = validate_solution(&inst, &EddSolution::default());
        assert_eq!(report.violations.len(), 7);
        assert!(report.violations.iter().all(|v| matches!(v, Violation::Uncovered(_))));
    }

    #[test]
    fn tighter_limit_overflows() {
        let inst = sample::ten_server_instance().with_limits(100, 105).unwrap();
        let report = validate_solution(&inst, &optimal_plan());
        // 2 -> 4 -> 10 -> 9 adds 5 + 2 + 1 on top of gamma.
        assert_eq!(
            report.violations,
            vec![Violation::DepthOverflow { node: 9, depth: 108, limit: 105 }]
        );
    }

    #[test]
    fn catches_tampering() {
        let inst = sample::ten_server_instance();
        let mut sol = optimal_plan();
        sol.total_cost += 1;
        assert!(matches!(
            validate_solution(&inst, &sol).violations[..],
            [Violation::CostMismatch { field: "total", .. }]
        ));

        let mut sol = optimal_plan();
        sol.depth.insert(9, 107);
        assert!(!validate_solution(&inst, &sol).is_feasible());

        // A detached cycle 3 -> 6 -> 7 -> 3 is never rooted.
        let mut sol = optimal_plan();
        sol.e2e.remove(&(7, 3));
        sol.e2e.remove(&(7, 6));
        sol.c2e.remove(&7);
        sol.e2e.extend([(3, 6), (6, 7), (7, 3)]);
        let report = validate_solution(&inst, &sol);
        assert!(report.violations.contains(&Violation::Unrooted(3)));
        assert!(report.violations.contains(&Violation::Uncovered(7)));
    }

    #[test]
    fn nine_server_depths() {
        let inst = sample::nine_server_instance();
        let sol = solution_cost(&inst, [4], [(1, 2), (4, 1), (1, 5), (2, 3), (4, 8)]).unwrap();
        let expect = [(1, 101), (2, 103), (3, 110), (4, 100), (5, 110), (8, 110)];
        assert_eq!(sol.depth.into_iter().collect::<Vec<_>>(), expect);
    }
}
