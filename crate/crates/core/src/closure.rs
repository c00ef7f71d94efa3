//! All-pairs shortest paths and the metric closure built from them.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::graph::{Node, Topology, Weight};
use crate::{EddError, Result};

pub const UNREACHABLE: Weight = Weight::MAX;

/// Shortest-path lengths between every pair of edge servers, with a
/// next-hop table for path reconstruction.
///
/// When several shortest paths exist, `next_hop(u, v)` is the smallest
/// neighbor of `u` that starts one of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricClosure {
    node_count: usize,
    dist: Vec<Weight>,
    next: Vec<Node>,
}

/// Dijkstra from every server, then one pass to pick the canonical next hop.
pub fn all_pairs_shortest<T: Topology + ?Sized>(topology: &T) -> Result<MetricClosure> {
    let n = topology.node_count();
    let stride = n + 1;
    let mut dist = vec![UNREACHABLE; stride * stride];
    for s in 1..=n {
        let row = &mut dist[s * stride..(s + 1) * stride];
        single_source(topology, s, row);
        if row[1..].contains(&UNREACHABLE) {
            return Err(EddError::Disconnected);
        }
    }
    let mut next = vec![0; stride * stride];
    for u in 1..=n {
        for v in 1..=n {
            if u == v {
                next[u * stride + v] = u;
                continue;
            }
            let target = dist[u * stride + v];
            // Neighbors are sorted, so the first match is the smallest id.
            let hop = topology
                .neighbors(u)
                .iter()
                .find(|&&(x, w)| w + dist[x * stride + v] == target)
                .map(|&(x, _)| x)
                .expect("some neighbor starts a shortest path");
            next[u * stride + v] = hop;
        }
    }
    Ok(MetricClosure { node_count: n, dist, next })
}

pub(crate) fn single_source<T: Topology + ?Sized>(topology: &T, source: Node, dist: &mut [Weight]) {
    dist.fill(UNREACHABLE);
    dist[source] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in topology.neighbors(u) {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(Reverse((nd, v)));
            }
        }
    }
}

impl MetricClosure {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    #[inline]
    pub fn dist(&self, u: Node, v: Node) -> Weight {
        self.dist[u * (self.node_count + 1) + v]
    }

    #[inline]
    pub fn next_hop(&self, u: Node, v: Node) -> Node {
        self.next[u * (self.node_count + 1) + v]
    }

    /// Canonical shortest path from `u` to `v`, both ends included.
    pub fn path(&self, u: Node, v: Node) -> Vec<Node> {
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = self.next_hop(cur, v);
            path.push(cur);
        }
        path
    }

    /// Complete graph on `subset` weighted by shortest-path length.
    pub fn induce(&self, subset: &[Node]) -> Result<InducedView<'_>> {
        let mut vertices = subset.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        if let Some(&bad) = vertices.iter().find(|&&v| v == 0 || v > self.node_count) {
            return Err(EddError::NodeOutOfRange { node: bad, node_count: self.node_count });
        }
        Ok(InducedView { closure: self, vertices })
    }
}

/// A view of the closure restricted to a vertex subset. No copying.
#[derive(Debug, Clone)]
pub struct InducedView<'a> {
    closure: &'a MetricClosure,
    vertices: Vec<Node>,
}

impl InducedView<'_> {
    pub fn vertices(&self) -> &[Node] {
        &self.vertices
    }

    pub fn weight(&self, u: Node, v: Node) -> Weight {
        self.closure.dist(u, v)
    }

    /// Every pair `(u, v, dist)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (Node, Node, Weight)> + '_ {
        self.vertices.iter().enumerate().flat_map(move |(i, &u)| {
            self.vertices[i + 1..].iter().map(move |&v| (u, v, self.closure.dist(u, v)))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::sample;
    use crate::EdgeServerNetwork;

    /// Exhaustive simple-path enumeration.
    fn brute_dist(net: &EdgeServerNetwork, s: Node, t: Node) -> Weight {
        fn go(net: &EdgeServerNetwork, u: Node, t: Node, seen: &mut Vec<bool>, acc: Weight, best: &mut Weight) {
            if u == t {
                *best = (*best).min(acc);
                return;
            }
            for &(v, w) in net.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    go(net, v, t, seen, acc + w, best);
                    seen[v] = false;
                }
            }
        }
        let mut seen = vec![false; net.node_count() + 1];
        seen[s] = true;
        let mut best = UNREACHABLE;
        go(net, s, t, &mut seen, 0, &mut best);
        best
    }

    #[test]
    fn ten_server_distances() {
        let net = sample::ten_server_network();
        let mc = all_pairs_shortest(&net).unwrap();
        assert_eq!(mc.dist(10, 9), 1);
        assert_eq!(mc.dist(4, 4), 0);
        // 1-2-4-10-9, frozen from the enumeration below.
        assert_eq!(brute_dist(&net, 1, 9), 13);
        assert_eq!(mc.dist(1, 9), 13);
        assert_eq!(mc.path(1, 9), vec![1, 2, 4, 10, 9]);
        for u in net.nodes() {
            for v in net.nodes() {
                assert_eq!(mc.dist(u, v), brute_dist(&net, u, v), "{u}-{v}");
            }
        }
    }

    #[test]
    fn tie_break_prefers_smallest_next_hop() {
        // Two equal routes 1-2-4 and 1-3-4.
        let net = EdgeServerNetwork::new(4, [(1, 3, 1), (3, 4, 1), (1, 2, 1), (2, 4, 1)]).unwrap();
        let mc = all_pairs_shortest(&net).unwrap();
        assert_eq!(mc.path(1, 4), vec![1, 2, 4]);
        assert_eq!(mc.path(4, 1), vec![4, 2, 1]);
    }

    #[test]
    fn induced_views() {
        let net = sample::ten_server_network();
        let mc = all_pairs_shortest(&net).unwrap();
        assert_eq!(mc.induce(&[3]).unwrap().edges().count(), 0);
        let all: Vec<Node> = net.nodes().collect();
        assert_eq!(mc.induce(&all).unwrap().edges().count(), 45);
        let view = mc.induce(&[4, 2, 1]).unwrap();
        let edges: Vec<_> = view.edges().collect();
        assert_eq!(edges, vec![(1, 2, 5), (1, 4, 10), (2, 4, 5)]);
        assert_eq!(brute_dist(&net, 1, 4), 10);
        assert!(matches!(mc.induce(&[0]), Err(EddError::NodeOutOfRange { .. })));
        assert!(matches!(mc.induce(&[11]), Err(EddError::NodeOutOfRange { .. })));
    }
}
