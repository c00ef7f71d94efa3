use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EdgeServerNetwork, Node, Topology, Weight};

/// Unit-length copy of a network: every link of weight `w` becomes a chain
/// of `w` unit links through `w - 1` temporary nodes. Original servers
/// keep their ids; temporary nodes are numbered after them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedHopGraph {
    original: usize,
    adj: Vec<Vec<(Node, Weight)>>,
    /// Original link carrying each temporary node, indexed by `v - original - 1`.
    carrier: Vec<(Node, Node)>,
}

impl ExpandedHopGraph {
    pub fn original_node_count(&self) -> usize {
        self.original
    }

    pub fn temporary_count(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_temporary(&self, v: Node) -> bool {
        v > self.original
    }

    /// The original link a temporary node sits on.
    pub fn carrier(&self, v: Node) -> Option<(Node, Node)> {
        self.is_temporary(v).then(|| self.carrier[v - self.original - 1])
    }

    pub fn degree(&self, v: Node) -> usize {
        self.adj[v].len()
    }
}

impl Topology for ExpandedHopGraph {
    fn node_count(&self) -> usize {
        self.adj.len() - 1
    }

    fn neighbors(&self, v: Node) -> &[(Node, Weight)] {
        &self.adj[v]
    }
}

pub fn expand_hops(network: &EdgeServerNetwork) -> ExpandedHopGraph {
    let original = network.node_count();
    let mut adj: Vec<Vec<(Node, Weight)>> = vec![Vec::new(); original + 1];
    let mut carrier = Vec::new();
    let link = |adj: &mut Vec<Vec<(Node, Weight)>>, a: Node, b: Node| {
        adj[a].push((b, 1));
        adj[b].push((a, 1));
    };
    for e in network.edges() {
        let mut prev = e.u;
        for _ in 1..e.w {
            adj.push(Vec::new());
            let t = adj.len() - 1;
            carrier.push((e.u, e.v));
            link(&mut adj, prev, t);
            prev = t;
        }
        link(&mut adj, prev, e.v);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    ExpandedHopGraph { original, adj, carrier }
}
