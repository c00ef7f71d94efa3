//! Turns an approximate Steiner tree into a feasible distribution plan.
//!
//! The busiest Steiner-tree server is fed from the cloud, the tree is
//! oriented away from it, and a depth-first walk keeps every link whose
//! endpoint is either a non-destination or a destination within budget.
//! A destination that is too deep is fed from the cloud instead; its
//! not-yet-visited neighbors that get closer through it are re-hung below it
//! before the walk continues. Branches that serve no destination are pruned
//! at the end.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::closure::all_pairs_shortest;
use crate::graph::{EddInstance, Node, Topology, Weight, CLOUD};
use crate::solution::{EddSolution, Forest};
use crate::steiner::{approximate_steiner, SteinerTree};
use crate::{EddError, Result};

/// A Steiner tree hung from the cloud, with path lengths measured from the
/// cloud (the cloud link counts `gamma`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedDistributionTree {
    root: Node,
    gamma: Weight,
    parent: Vec<Option<Node>>,
    children: Vec<Vec<Node>>,
    path_length: Vec<Option<Weight>>,
}

impl RootedDistributionTree {
    /// The server attached to the cloud.
    pub fn root(&self) -> Node {
        self.root
    }

    pub fn contains(&self, v: Node) -> bool {
        self.parent.get(v).is_some_and(Option::is_some)
    }

    pub fn parent(&self, v: Node) -> Option<Node> {
        self.parent.get(v).copied().flatten()
    }

    /// Children in ascending id order. `children(CLOUD)` lists the servers
    /// fed by the cloud.
    pub fn children(&self, v: Node) -> &[Node] {
        &self.children[v]
    }

    pub fn path_length(&self, v: Node) -> Option<Weight> {
        if v == CLOUD {
            return Some(0);
        }
        self.path_length.get(v).copied().flatten()
    }

    fn reparent(&mut self, v: Node, new_parent: Node) {
        if let Some(old) = self.parent[v] {
            self.children[old].retain(|&c| c != v);
        }
        self.parent[v] = Some(new_parent);
        let kids = &mut self.children[new_parent];
        let at = kids.binary_search(&v).unwrap_or_else(|i| i);
        kids.insert(at, v);
    }

    /// Breadth-first recomputation of every path length from the cloud.
    fn refresh_depths<T: Topology + ?Sized>(&mut self, topology: &T) {
        let mut queue: VecDeque<Node> = self.children[CLOUD].iter().copied().collect();
        for &v in &self.children[CLOUD] {
            self.path_length[v] = Some(self.gamma);
        }
        while let Some(u) = queue.pop_front() {
            let d = self.path_length[u].expect("set before enqueue");
            for &c in &self.children[u] {
                let w = topology.weight(u, c).expect("tree links are real");
                self.path_length[c] = Some(d + w);
                queue.push_back(c);
            }
        }
    }
}

/// Feeds the highest-degree Steiner-tree server from the cloud (ties to the
/// smallest id) and orients the tree away from it.
pub fn root_tree(st: &SteinerTree, instance: &EddInstance) -> Result<RootedDistributionTree> {
    root_tree_on(st, instance.network(), instance.gamma(), |_| true)
}

pub(crate) fn root_tree_on<T: Topology + ?Sized>(
    st: &SteinerTree,
    topology: &T,
    gamma: Weight,
    eligible: impl Fn(Node) -> bool,
) -> Result<RootedDistributionTree> {
    let n = topology.node_count();
    let mut adj: Vec<Vec<Node>> = vec![Vec::new(); n + 1];
    for &(a, b, w) in &st.edges {
        if topology.weight(a, b) != Some(w) {
            return Err(EddError::UnknownEdge(a, b));
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    let root = st
        .vertices
        .iter()
        .copied()
        .filter(|&v| eligible(v))
        .max_by(|&a, &b| adj[a].len().cmp(&adj[b].len()).then(b.cmp(&a)))
        .ok_or(EddError::EmptyVertexSet)?;

    let mut tree = RootedDistributionTree {
        root,
        gamma,
        parent: vec![None; n + 1],
        children: vec![Vec::new(); n + 1],
        path_length: vec![None; n + 1],
    };
    tree.parent[root] = Some(CLOUD);
    tree.children[CLOUD].push(root);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let mut kids: Vec<Node> = adj[u].iter().copied().filter(|&c| tree.parent[c].is_none()).collect();
        kids.sort_unstable();
        for &c in &kids {
            tree.parent[c] = Some(u);
            queue.push_back(c);
        }
        tree.children[u] = kids;
    }
    tree.refresh_depths(topology);
    Ok(tree)
}

/// Walks the rooted tree and cuts it down to a plan that meets the budget.
pub fn slice_and_finetune(tree: RootedDistributionTree, instance: &EddInstance) -> Result<EddSolution> {
    let forest = slice_on(
        tree,
        instance.network(),
        |v| instance.is_destination(v),
        instance.gamma(),
        instance.l_limit(),
    );
    forest.price(instance)
}

pub(crate) fn slice_on<T: Topology + ?Sized>(
    mut tree: RootedDistributionTree,
    topology: &T,
    is_destination: impl Fn(Node) -> bool,
    gamma: Weight,
    l_limit: Weight,
) -> Forest {
    let n = topology.node_count();
    let mut visited = vec![false; n + 1];
    visited[CLOUD] = true;
    let mut kept = Forest::new(n);
    let mut stack = vec![tree.root];
    while let Some(v) = stack.pop() {
        if visited[v] {
            continue;
        }
        visited[v] = true;
        let depth = tree.path_length[v].expect("tree node");
        if !is_destination(v) || depth <= l_limit {
            kept.parent[v] = tree.parent[v];
        } else {
            tree.reparent(v, CLOUD);
            tree.path_length[v] = Some(gamma);
            kept.parent[v] = Some(CLOUD);
            for &(u, w) in topology.neighbors(v) {
                if visited[u] || !tree.contains(u) || tree.parent[u] == Some(v) {
                    continue;
                }
                let through_v = gamma + w;
                if through_v <= l_limit && tree.path_length[u].is_some_and(|d| d > through_v) {
                    tree.reparent(u, v);
                    tree.path_length[u] = Some(through_v);
                }
            }
            tree.refresh_depths(topology);
        }
        stack.extend(tree.children[v].iter().rev());
    }
    kept.prune(is_destination);
    kept
}

/// The full heuristic: Steiner tree, rooting, slicing.
pub fn edd_nste(instance: &EddInstance) -> Result<EddSolution> {
    let closure = all_pairs_shortest(instance.network())?;
    let st = approximate_steiner(instance, &closure)?;
    let tree = root_tree(&st, instance)?;
    slice_and_finetune(tree, instance)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::sample;
    use crate::{validate_solution, EdgeServerNetwork};
    use alloc::collections::BTreeSet;

    #[test]
    fn ten_server_pipeline() {
        let inst = sample::ten_server_instance();
        let mc = all_pairs_shortest(inst.network()).unwrap();
        let st = approximate_steiner(&inst, &mc).unwrap();
        let tree = root_tree(&st, &inst).unwrap();
        assert_eq!(tree.root(), 1);
        assert_eq!(tree.path_length(1), Some(100));
        assert_eq!(tree.path_length(9), Some(113));
        assert_eq!(tree.children(1), &[2, 3]);

        let sol = slice_and_finetune(tree, &inst).unwrap();
        assert_eq!(sol.total_cost, 228);
        assert_eq!(sol.c2e, BTreeSet::from([1, 9]));
        assert_eq!(sol.e2e, BTreeSet::from([(1, 2), (1, 3), (2, 4), (3, 7), (9, 6)]));
        assert!(validate_solution(&inst, &sol).is_feasible());
        assert_eq!(edd_nste(&inst).unwrap(), sol);
    }

    #[test]
    fn no_slack_feeds_every_destination() {
        let inst = sample::ten_server_instance().with_limits(100, 100).unwrap();
        let sol = edd_nste(&inst).unwrap();
        assert_eq!(sol.total_cost, 700);
        assert_eq!(sol.c2e.len(), 7);
        assert!(sol.e2e.is_empty());
    }

    #[test]
    fn single_node_tree() {
        let inst = EddInstance::new(sample::ten_server_network(), [8], 50, 60).unwrap();
        let st = SteinerTree { vertices: BTreeSet::from([8]), edges: vec![], total_weight: 0 };
        let tree = root_tree(&st, &inst).unwrap();
        assert_eq!(tree.root(), 8);
        assert_eq!(tree.path_length(8), Some(50));
        assert_eq!(slice_and_finetune(tree, &inst).unwrap().total_cost, 50);
    }

    #[test]
    fn degree_ties_go_to_smallest_id() {
        // A path 3 - 1 - 2 - 4: nodes 1 and 2 both have degree 2.
        let net = EdgeServerNetwork::new(4, [(1, 3, 1), (1, 2, 1), (2, 4, 1)]).unwrap();
        let inst = EddInstance::new(net, [3, 4], 10, 20).unwrap();
        let st = SteinerTree {
            vertices: BTreeSet::from([1, 2, 3, 4]),
            edges: vec![(1, 2, 1), (1, 3, 1), (2, 4, 1)],
            total_weight: 3,
        };
        assert_eq!(root_tree(&st, &inst).unwrap().root(), 1);
    }

    #[test]
    fn rejects_non_network_edges() {
        let inst = sample::ten_server_instance();
        let st = SteinerTree { vertices: BTreeSet::from([1, 9]), edges: vec![(1, 9, 13)], total_weight: 13 };
        assert_eq!(root_tree(&st, &inst), Err(EddError::UnknownEdge(1, 9)));
    }

    #[test]
    fn non_destination_branch_beyond_budget_is_pruned() {
        // 1 - 2 - 3: the hub 2 gets the cloud link, both destinations sit at
        // 14 > 13 and are fed directly, leaving 2 useless.
        let net = EdgeServerNetwork::new(3, [(1, 2, 4), (2, 3, 4)]).unwrap();
        let inst = EddInstance::new(net, [1, 3], 10, 13).unwrap();
        let sol = edd_nste(&inst).unwrap();
        assert!(validate_solution(&inst, &sol).is_feasible());
        assert_eq!(sol.c2e, BTreeSet::from([1, 3]));
        assert_eq!(sol.total_cost, 20);
    }
}
