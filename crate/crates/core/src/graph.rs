use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::{EddError, Result};

/// Node identifier. Edge servers are `1..=N`; `0` is the cloud.
pub type Node = usize;

/// Link length (equivalently, propagation delay) in integer units.
pub type Weight = u64;

/// The cloud. It has no stored edges: every server is one `gamma` hop away.
pub const CLOUD: Node = 0;

/// An undirected link between two edge servers, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: Node,
    pub v: Node,
    pub w: Weight,
}

/// Read-only adjacency over nodes `1..=node_count()`.
///
/// Implemented by [`EdgeServerNetwork`] and by the unit-length expansion
/// used for the hop-based baseline, so the slicing procedure can run on both.
pub trait Topology {
    fn node_count(&self) -> usize;
    /// Neighbors of `v`, sorted by node id.
    fn neighbors(&self, v: Node) -> &[(Node, Weight)];

    fn weight(&self, u: Node, v: Node) -> Option<Weight> {
        let nbrs = self.neighbors(u);
        nbrs.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| nbrs[i].1)
    }
}

/// Undirected weighted graph of edge servers.
///
/// Invariants (checked by [`EdgeServerNetwork::new`]): no self-loops, no
/// duplicate links, positive weights, connected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeServerNetwork {
    node_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(Node, Weight)>>,
}

impl EdgeServerNetwork {
    pub fn new<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Node, Node, Weight)>,
    {
        if node_count == 0 {
            return Err(EddError::EmptyNetwork);
        }
        let mut list = Vec::new();
        for (a, b, w) in edges {
            for x in [a, b] {
                if x == CLOUD || x > node_count {
                    return Err(EddError::NodeOutOfRange { node: x, node_count });
                }
            }
            if a == b {
                return Err(EddError::SelfLoop(a));
            }
            if w == 0 {
                return Err(EddError::ZeroWeight(a, b));
            }
            list.push(Edge { u: a.min(b), v: a.max(b), w });
        }
        list.sort();
        for pair in list.windows(2) {
            if (pair[0].u, pair[0].v) == (pair[1].u, pair[1].v) {
                return Err(EddError::DuplicateEdge(pair[0].u, pair[0].v));
            }
        }
        let mut adjacency = vec![Vec::new(); node_count + 1];
        for e in &list {
            adjacency[e.u].push((e.v, e.w));
            adjacency[e.v].push((e.u, e.w));
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let net = Self { node_count, edges: list, adjacency };
        if !net.is_connected() {
            return Err(EddError::Disconnected);
        }
        Ok(net)
    }

    /// Edges sorted by `(u, v)` with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + Clone {
        1..=self.node_count
    }

    pub fn degree(&self, v: Node) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_weight(&self) -> Weight {
        self.edges.iter().map(|e| e.w).max().unwrap_or(0)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.node_count + 1];
        let mut queue = VecDeque::from([1]);
        seen[1] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count == self.node_count
    }
}

impl Topology for EdgeServerNetwork {
    fn node_count(&self) -> usize {
        self.node_count
    }

    fn neighbors(&self, v: Node) -> &[(Node, Weight)] {
        &self.adjacency[v]
    }
}

/// One solvable problem: a network, the destinations, the cloud cost
/// `gamma` and the end-to-end length budget `l_limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EddInstance {
    network: EdgeServerNetwork,
    destinations: Vec<Node>,
    is_destination: Vec<bool>,
    gamma: Weight,
    l_limit: Weight,
}

impl EddInstance {
    pub fn new(
        network: EdgeServerNetwork,
        destinations: impl IntoIterator<Item = Node>,
        gamma: Weight,
        l_limit: Weight,
    ) -> Result<Self> {
        let n = network.node_count();
        let mut destinations: Vec<Node> = destinations.into_iter().collect();
        destinations.sort_unstable();
        destinations.dedup();
        if destinations.is_empty() {
            return Err(EddError::NoDestinations);
        }
        if let Some(&bad) = destinations.iter().find(|&&r| r == CLOUD || r > n) {
            return Err(EddError::NodeOutOfRange { node: bad, node_count: n });
        }
        if gamma == 0 {
            return Err(EddError::ZeroGamma);
        }
        if l_limit < gamma {
            return Err(EddError::LimitBelowGamma { gamma, l_limit });
        }
        let mut is_destination = vec![false; n + 1];
        for &r in &destinations {
            is_destination[r] = true;
        }
        Ok(Self { network, destinations, is_destination, gamma, l_limit })
    }

    pub fn network(&self) -> &EdgeServerNetwork {
        &self.network
    }

    /// Destinations in ascending order.
    pub fn destinations(&self) -> &[Node] {
        &self.destinations
    }

    pub fn is_destination(&self, v: Node) -> bool {
        self.is_destination.get(v).copied().unwrap_or(false)
    }

    pub fn gamma(&self) -> Weight {
        self.gamma
    }

    pub fn l_limit(&self) -> Weight {
        self.l_limit
    }

    /// Edge-network slack left after the mandatory cloud hop.
    pub fn slack(&self) -> Weight {
        self.l_limit - self.gamma
    }

    pub fn node_count(&self) -> usize {
        self.network.node_count()
    }

    /// Same network and destinations under a different budget.
    pub fn with_limits(&self, gamma: Weight, l_limit: Weight) -> Result<Self> {
        Self::new(self.network.clone(), self.destinations.iter().copied(), gamma, l_limit)
    }
}

/// Small hand-made scenarios used throughout the tests and docs.
pub mod sample {
    use super::*;

    /// Ten edge servers, fourteen links, seven destinations.
    pub fn ten_server_network() -> EdgeServerNetwork {
        EdgeServerNetwork::new(
            10,
            [
                (1, 2, 5),
                (1, 3, 6),
                (1, 4, 100),
                (3, 6, 7),
                (6, 7, 3),
                (6, 9, 9),
                (4, 10, 2),
                (10, 9, 1),
                (2, 5, 3),
                (5, 8, 11),
                (9, 8, 20),
                (3, 7, 3),
                (7, 8, 1),
                (2, 4, 5),
            ],
        )
        .expect("sample network is valid")
    }

    pub const TEN_SERVER_DESTINATIONS: [Node; 7] = [3, 7, 6, 9, 1, 4, 2];

    /// The ten-server scenario with `gamma = 100`, `l_limit = 110`.
    pub fn ten_server_instance() -> EddInstance {
        EddInstance::new(ten_server_network(), TEN_SERVER_DESTINATIONS, 100, 110)
            .expect("sample instance is valid")
    }

    /// Nine servers used to illustrate depth accounting.
    pub fn nine_server_network() -> EdgeServerNetwork {
        EdgeServerNetwork::new(
            9,
            [
                (1, 2, 2),
                (2, 3, 7),
                (1, 5, 9),
                (5, 6, 12),
                (6, 7, 3),
                (1, 4, 1),
                (4, 7, 27),
                (7, 9, 8),
                (3, 8, 4),
                (8, 9, 6),
                (4, 8, 10),
            ],
        )
        .expect("sample network is valid")
    }

    /// Nine-server scenario, `gamma = 100`, `l_limit = 112`, destinations
    /// are the servers reached by the illustrated plan.
    pub fn nine_server_instance() -> EddInstance {
        EddInstance::new(nine_server_network(), [1, 2, 3, 4, 5, 8], 100, 112)
            .expect("sample instance is valid")
    }
}
