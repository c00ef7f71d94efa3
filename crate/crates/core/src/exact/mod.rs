//! Optimal plans.
//!
//! [`solve_exact`] runs a dynamic program over destination subsets when its
//! table fits (exponential only in the number of destinations), and falls
//! back to a budgeted branch and bound over the integer-program variables
//! otherwise. [`build_model`] produces the integer program itself for
//! export to external solvers.

mod bnb;
mod dp;
mod model;
mod oracle;

pub use model::{build_model, Constraint, IpModel, Sense, Var};
pub use oracle::{brute_force_oracle, ORACLE_MAX_NODES};

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EddInstance, Node, Topology, Weight, CLOUD};
use crate::solution::{solution_cost, EddSolution};
use crate::Result;

/// Search-node cap used when the caller gives none.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// Largest dynamic-program table (in cells) and work estimate accepted.
const DP_MAX_CELLS: u128 = 1 << 25;
const DP_MAX_WORK: u128 = 4_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExactMethod {
    SubsetDp,
    BranchAndBound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactOutcome {
    pub solution: EddSolution,
    /// `false` when the branch-and-bound budget ran out; `solution` is then
    /// the best plan found, not necessarily optimal.
    pub proven_optimal: bool,
    pub method: ExactMethod,
    /// Branch-and-bound nodes explored (0 for the dynamic program).
    pub nodes_explored: u64,
}

/// Whether the subset dynamic program is affordable for this instance.
pub fn dp_fits(instance: &EddInstance) -> bool {
    instance.destinations().len() <= 24
        && dp::cell_count(instance) <= DP_MAX_CELLS
        && dp::work_estimate(instance) <= DP_MAX_WORK
}

/// Minimum-cost feasible plan.
pub fn solve_exact(instance: &EddInstance, node_budget: Option<u64>) -> Result<ExactOutcome> {
    if dp_fits(instance) {
        return solve_subset_dp(instance);
    }
    solve_branch_and_bound(instance, node_budget.unwrap_or(DEFAULT_NODE_BUDGET))
}

pub fn solve_subset_dp(instance: &EddInstance) -> Result<ExactOutcome> {
    Ok(ExactOutcome {
        solution: recenter(instance, &dp::solve_dp(instance)?)?,
        proven_optimal: true,
        method: ExactMethod::SubsetDp,
        nodes_explored: 0,
    })
}

pub fn solve_branch_and_bound(instance: &EddInstance, node_budget: u64) -> Result<ExactOutcome> {
    let out = bnb::branch_and_bound(instance, node_budget)?;
    Ok(ExactOutcome {
        solution: recenter(instance, &out.solution)?,
        proven_optimal: out.complete,
        method: ExactMethod::BranchAndBound,
        nodes_explored: out.nodes,
    })
}

/// Re-roots every tree of the plan at the node giving the smallest
/// (deepest path, summed path lengths, id). The links stay the same, so the
/// cost does too; only the choice of transit inside each tree changes.
fn recenter(instance: &EddInstance, sol: &EddSolution) -> Result<EddSolution> {
    let n = instance.node_count();
    let net = instance.network();
    let mut adj: Vec<Vec<(Node, Weight)>> = vec![Vec::new(); n + 1];
    for &(p, c) in &sol.e2e {
        let w = net.weight(p, c).expect("solution links exist");
        adj[p].push((c, w));
        adj[c].push((p, w));
    }
    let mut c2e = BTreeSet::new();
    let mut e2e = BTreeSet::new();
    for &transit in &sol.c2e {
        let members = depths_from(&adj, transit, instance.gamma());
        let key = |root: Node| {
            let d = depths_from(&adj, root, instance.gamma());
            let deepest = d.iter().map(|&(_, _, l)| l).max().unwrap_or(0);
            let total: Weight = d.iter().map(|&(_, _, l)| l).sum();
            (deepest, total, root)
        };
        let best = members.iter().map(|&(v, _, _)| key(v)).min().expect("tree has its transit");
        c2e.insert(best.2);
        for (v, parent, _) in depths_from(&adj, best.2, instance.gamma()) {
            if parent != CLOUD {
                e2e.insert((parent, v));
            }
        }
    }
    solution_cost(instance, c2e, e2e)
}

/// `(node, parent, path length)` for the tree around `root`.
fn depths_from(adj: &[Vec<(Node, Weight)>], root: Node, gamma: Weight) -> Vec<(Node, Node, Weight)> {
    let mut out = vec![(root, CLOUD, gamma)];
    let mut i = 0;
    while i < out.len() {
        let (v, p, d) = out[i];
        for &(u, w) in &adj[v] {
            if u != p {
                out.push((u, v, d + w));
            }
        }
        i += 1;
    }
    out
}
