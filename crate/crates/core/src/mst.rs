use alloc::vec::Vec;

use crate::graph::{Node, Weight};
use crate::{EddError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpanningTree {
    /// `(u, v, w)` with `u < v`, in the order Kruskal accepted them.
    pub edges: Vec<(Node, Node, Weight)>,
    pub total: Weight,
}

pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect(), rank: alloc::vec![0; n] }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            core::cmp::Ordering::Less => self.parent[ra] = rb,
            core::cmp::Ordering::Greater => self.parent[rb] = ra,
            core::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Kruskal over every pair of `vertices` for which `weight` is defined.
///
/// Ties are broken by `(min id, max id)` so the result is deterministic.
pub fn minimum_spanning_tree<F>(vertices: &[Node], weight: F) -> Result<SpanningTree>
where
    F: Fn(Node, Node) -> Option<Weight>,
{
    let mut verts = vertices.to_vec();
    verts.sort_unstable();
    verts.dedup();
    if verts.is_empty() {
        return Err(EddError::EmptyVertexSet);
    }
    let mut candidates = Vec::new();
    for (i, &u) in verts.iter().enumerate() {
        for (j, &v) in verts.iter().enumerate().skip(i + 1) {
            if let Some(w) = weight(u, v) {
                candidates.push((w, u, v, i, j));
            }
        }
    }
    kruskal(verts.len(), candidates)
}

/// Kruskal over an explicit sparse edge list.
pub fn minimum_spanning_tree_of_edges(
    vertices: &[Node],
    edges: &[(Node, Node, Weight)],
) -> Result<SpanningTree> {
    let mut verts = vertices.to_vec();
    verts.sort_unstable();
    verts.dedup();
    if verts.is_empty() {
        return Err(EddError::EmptyVertexSet);
    }
    let index = |x: Node| verts.binary_search(&x).ok();
    let mut candidates = Vec::with_capacity(edges.len());
    for &(a, b, w) in edges {
        let (u, v) = (a.min(b), a.max(b));
        if let (Some(i), Some(j)) = (index(u), index(v)) {
            candidates.push((w, u, v, i, j));
        }
    }
    kruskal(verts.len(), candidates)
}

fn kruskal(
    n: usize,
    mut candidates: Vec<(Weight, Node, Node, usize, usize)>,
) -> Result<SpanningTree> {
    candidates.sort_unstable_by_key(|&(w, u, v, _, _)| (w, u, v));
    let mut sets = DisjointSets::new(n);
    let mut tree = SpanningTree::default();
    for (w, u, v, i, j) in candidates {
        if tree.edges.len() + 1 == n {
            break;
        }
        if sets.union(i, j) {
            tree.edges.push((u, v, w));
            tree.total += w;
        }
    }
    if tree.edges.len() + 1 != n {
        return Err(EddError::Disconnected);
    }
    Ok(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{sample, Topology};

    #[test]
    fn single_vertex() {
        let t = minimum_spanning_tree(&[4], |_, _| Some(1)).unwrap();
        assert!(t.edges.is_empty());
        assert_eq!(t.total, 0);
    }

    #[test]
    fn errors() {
        assert_eq!(minimum_spanning_tree(&[], |_, _| Some(1)), Err(EddError::EmptyVertexSet));
        assert_eq!(minimum_spanning_tree(&[1, 2], |_, _| None), Err(EddError::Disconnected));
    }

    #[test]
    fn ten_server_network() {
        let net = sample::ten_server_network();
        let nodes: Vec<Node> = net.nodes().collect();
        let t = minimum_spanning_tree(&nodes, |u, v| net.weight(u, v)).unwrap();
        // Hand Kruskal: 9-10, 7-8, 4-10, 2-5, 3-7, 6-7, 1-2, 2-4, 1-3.
        assert_eq!(t.edges.len(), 9);
        assert_eq!(t.total, 29);
        let sparse: Vec<_> = net.edges().iter().map(|e| (e.u, e.v, e.w)).collect();
        assert_eq!(minimum_spanning_tree_of_edges(&nodes, &sparse).unwrap(), t);
    }

    #[test]
    fn closure_on_two_destinations() {
        let net = sample::ten_server_network();
        let mc = crate::all_pairs_shortest(&net).unwrap();
        let t = minimum_spanning_tree(&[1, 2], |u, v| Some(mc.dist(u, v))).unwrap();
        assert_eq!(t.edges, vec![(1, 2, 5)]);
    }
}
