use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use super::hops::{expand_hops, ExpandedHopGraph};
use crate::graph::{EddInstance, Node, Topology, Weight};
use crate::mst::minimum_spanning_tree_of_edges;
use crate::nste::{root_tree_on, slice_on};
use crate::solution::{EddSolution, Forest};
use crate::steiner::{prune_tree, SteinerTree};
use crate::{minimum_spanning_tree, EddError, Result};

/// The hop-based EDD-A heuristic run on the unit-length expansion of the
/// network, with the hop limit set to the path-length limit.
///
/// A connectivity-oriented Steiner tree is built from the MST of the hop
/// closure on the destinations, each closure link expanded along a
/// shortest hop path that prefers high-degree nodes. It is rooted at its
/// highest-degree original server, sliced as in NSTE, and mapped back to
/// original links.
pub fn edd_a(instance: &EddInstance) -> Result<EddSolution> {
    let g = expand_hops(instance.network());
    let terminals = instance.destinations();
    let hops: Vec<Vec<Weight>> = terminals.iter().map(|&t| bfs(&g, t)).collect();
    let index = |v: Node| terminals.binary_search(&v).expect("terminal");
    let skeleton = minimum_spanning_tree(terminals, |a, b| {
        Some(hops[index(a)][b]).filter(|&d| d != Weight::MAX)
    })?;
    if skeleton.edges.len() + 1 != terminals.len() {
        return Err(EddError::Disconnected);
    }

    let mut links = BTreeSet::new();
    let mut vertices: BTreeSet<Node> = terminals.iter().copied().collect();
    for &(a, b, _) in &skeleton.edges {
        let from_a = &hops[index(a)];
        let mut cur = b;
        while cur != a {
            let prev = g
                .neighbors(cur)
                .iter()
                .map(|&(u, _)| u)
                .filter(|&u| from_a[u] + 1 == from_a[cur])
                .max_by(|&x, &y| g.degree(x).cmp(&g.degree(y)).then(y.cmp(&x)))
                .expect("shortest hop path");
            links.insert((prev.min(cur), prev.max(cur), 1));
            vertices.insert(prev);
            cur = prev;
        }
    }
    let verts: Vec<Node> = vertices.into_iter().collect();
    let links: Vec<(Node, Node, Weight)> = links.into_iter().collect();
    let spanning = minimum_spanning_tree_of_edges(&verts, &links)?;
    let n = instance.node_count();
    let is_destination = |v: Node| v <= n && instance.is_destination(v);
    let cmst: SteinerTree = prune_tree(spanning.edges, is_destination, terminals.first().copied());

    let tree = root_tree_on(&cmst, &g, instance.gamma(), |v| !g.is_temporary(v))?;
    let hop_forest = slice_on(tree, &g, is_destination, instance.gamma(), instance.l_limit());
    collapse(&g, &hop_forest).price(instance)
}

/// Replaces every chain of temporary nodes by the original link it encodes.
fn collapse(g: &ExpandedHopGraph, hop_forest: &Forest) -> Forest {
    let n = g.original_node_count();
    let mut forest = Forest::new(n);
    for v in 1..=n {
        let mut p = hop_forest.parent[v];
        while let Some(t) = p.filter(|&t| g.is_temporary(t)) {
            p = hop_forest.parent[t];
        }
        forest.parent[v] = p;
    }
    forest
}

fn bfs(g: &ExpandedHopGraph, source: Node) -> Vec<Weight> {
    let mut dist = vec![Weight::MAX; g.node_count() + 1];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in g.neighbors(u) {
            if dist[v] == Weight::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    dist
}
