use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EddInstance, Node, Topology, Weight, CLOUD};
use crate::{EddError, Result};

/// Largest instance the oracle accepts.
pub const ORACLE_MAX_NODES: usize = 9;

/// Minimum plan cost by enumerating every parent assignment.
///
/// Each server picks no parent (non-destinations only), the cloud, or one
/// of its neighbors; assignments that contain a cycle, a dangling relay or
/// a node past the budget are discarded. Exponential on purpose; it only
/// serves to check the real solvers.
pub fn brute_force_oracle(instance: &EddInstance) -> Result<Weight> {
    let n = instance.node_count();
    if n > ORACLE_MAX_NODES {
        return Err(EddError::TooLarge { node_count: n, limit: ORACLE_MAX_NODES });
    }
    let net = instance.network();
    let mut options: Vec<Vec<Option<(Node, Weight)>>> = vec![Vec::new(); n + 1];
    for v in 1..=n {
        if !instance.is_destination(v) {
            options[v].push(None);
        }
        options[v].push(Some((CLOUD, instance.gamma())));
        options[v].extend(net.neighbors(v).iter().map(|&(u, w)| Some((u, w))));
    }
    let mut parent = vec![None; n + 1];
    let mut best = Weight::MAX;
    enumerate(instance, &options, 1, 0, &mut parent, &mut best);
    Ok(best)
}

fn enumerate(
    instance: &EddInstance,
    options: &[Vec<Option<(Node, Weight)>>],
    v: Node,
    cost: Weight,
    parent: &mut Vec<Option<(Node, Weight)>>,
    best: &mut Weight,
) {
    if cost >= *best {
        return;
    }
    if v == options.len() {
        if is_valid(instance, parent) {
            *best = cost;
        }
        return;
    }
    for &choice in &options[v] {
        parent[v] = choice;
        let add = choice.map_or(0, |(_, w)| w);
        enumerate(instance, options, v + 1, cost + add, parent, best);
    }
    parent[v] = None;
}

fn is_valid(instance: &EddInstance, parent: &[Option<(Node, Weight)>]) -> bool {
    let n = parent.len() - 1;
    for v in 1..=n {
        if parent[v].is_none() {
            continue;
        }
        let mut depth = 0;
        let mut cur = v;
        let mut steps = 0;
        loop {
            match parent[cur] {
                Some((CLOUD, w)) => {
                    depth += w;
                    break;
                }
                Some((p, w)) => {
                    depth += w;
                    cur = p;
                }
                None => return false,
            }
            steps += 1;
            if steps > n {
                return false;
            }
        }
        if depth > instance.l_limit() {
            return false;
        }
    }
    true
}
