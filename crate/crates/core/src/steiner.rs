//! Network Steiner tree approximation by triple loss contraction.
//!
//! Start from the metric closure on the destinations. While some triple of
//! destinations has a positive win, contract it (two of its closure edges
//! drop to length zero) and remember its centroid as a Steiner point. The
//! final tree is the MST of the closure on destinations plus Steiner points,
//! expanded into real shortest paths and pruned of non-destination leaves.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::closure::MetricClosure;
use crate::graph::{EddInstance, Node, Weight};
use crate::mst::{minimum_spanning_tree, minimum_spanning_tree_of_edges};
use crate::Result;

/// Three destinations and the non-destination server closest to all of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triple {
    /// Sorted ascending.
    pub members: [Node; 3],
    pub centroid: Node,
    /// Sum of closure distances from the centroid to the members.
    pub spread: Weight,
}

/// Pairwise `save` values over the vertices of a spanning tree: the largest
/// edge on the tree path between two vertices, which is also how much the
/// tree weight drops when that pair is joined at length zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaveTable {
    vertices: Vec<Node>,
    save: Vec<Weight>,
}

impl SaveTable {
    pub fn vertices(&self) -> &[Node] {
        &self.vertices
    }

    pub fn get(&self, a: Node, b: Node) -> Option<Weight> {
        let i = self.vertices.binary_search(&a).ok()?;
        let j = self.vertices.binary_search(&b).ok()?;
        Some(self.at(i, j))
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> Weight {
        self.save[i * self.vertices.len() + j]
    }
}

/// Computes the save table of a tree by repeatedly cutting its heaviest edge.
///
/// The heaviest edge `e` splits its component in two; every pair straddling
/// the cut gets `save = w(e)`. Both halves are then handled the same way.
/// Ties pick the smallest `(min id, max id)` edge.
pub fn find_save(tree: &[(Node, Node, Weight)]) -> SaveTable {
    let mut vertices: Vec<Node> = tree.iter().flat_map(|&(u, v, _)| [u, v]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    let k = vertices.len();
    let mut save = vec![0; k * k];
    let idx = |x: Node| vertices.binary_search(&x).expect("tree vertex");
    let edges: Vec<(usize, usize, Weight, Node, Node)> = tree
        .iter()
        .map(|&(u, v, w)| (idx(u), idx(v), w, u.min(v), u.max(v)))
        .collect();

    // Each work item is the edge list of one connected component.
    let mut work = vec![(0..edges.len()).collect::<Vec<usize>>()];
    let mut side = vec![usize::MAX; k];
    let mut stamp = 0;
    while let Some(component) = work.pop() {
        if component.is_empty() {
            continue;
        }
        let &cut = component
            .iter()
            .max_by(|&&a, &&b| {
                let (ea, eb) = (&edges[a], &edges[b]);
                ea.2.cmp(&eb.2).then((eb.3, eb.4).cmp(&(ea.3, ea.4)))
            })
            .expect("nonempty");
        let rest: Vec<usize> = component.into_iter().filter(|&e| e != cut).collect();
        let (a, b, x, _, _) = edges[cut];

        // Flood from each endpoint over the remaining edges.
        let mut halves = [Vec::new(), Vec::new()];
        for (h, start) in [a, b].into_iter().enumerate() {
            stamp += 1;
            side[start] = stamp;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                halves[h].push(u);
                for &e in &rest {
                    let (p, q, ..) = edges[e];
                    let next = if p == u { q } else if q == u { p } else { continue };
                    if side[next] != stamp {
                        side[next] = stamp;
                        stack.push(next);
                    }
                }
            }
        }
        for &p in &halves[0] {
            for &q in &halves[1] {
                save[p * k + q] = x;
                save[q * k + p] = x;
            }
        }
        let in_first: BTreeSet<usize> = halves[0].iter().copied().collect();
        let (first, second): (Vec<usize>, Vec<usize>) =
            rest.into_iter().partition(|&e| in_first.contains(&edges[e].0));
        work.push(first);
        work.push(second);
    }
    SaveTable { vertices, save }
}

/// Every 3-subset of the destinations with its centroid drawn from the
/// non-destination servers (ties to the smallest id).
///
/// Returns nothing when there are fewer than three destinations or when
/// every server is a destination.
pub fn enumerate_triples(instance: &EddInstance, closure: &MetricClosure) -> Vec<Triple> {
    let dest = instance.destinations();
    let candidates: Vec<Node> =
        instance.network().nodes().filter(|&v| !instance.is_destination(v)).collect();
    if dest.len() < 3 || candidates.is_empty() {
        return Vec::new();
    }
    let mut triples = Vec::new();
    for i in 0..dest.len() {
        for j in i + 1..dest.len() {
            for l in j + 1..dest.len() {
                let members = [dest[i], dest[j], dest[l]];
                let (spread, centroid) = candidates
                    .iter()
                    .map(|&v| (members.iter().map(|&s| closure.dist(v, s)).sum::<Weight>(), v))
                    .min()
                    .expect("candidates nonempty");
                triples.push(Triple { members, centroid, spread });
            }
        }
    }
    triples
}

/// A tree of real network links spanning every destination.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SteinerTree {
    pub vertices: BTreeSet<Node>,
    /// `(u, v, w)` with `u < v`, sorted.
    pub edges: Vec<(Node, Node, Weight)>,
    pub total_weight: Weight,
}

impl SteinerTree {
    pub fn degree(&self, v: Node) -> usize {
        self.edges.iter().filter(|&&(a, b, _)| a == v || b == v).count()
    }
}

/// Triple-contraction Steiner tree for the instance's destinations.
pub fn approximate_steiner(instance: &EddInstance, closure: &MetricClosure) -> Result<SteinerTree> {
    let steiner_points = contract_triples(instance, closure)?;
    let mut terminals: Vec<Node> = instance.destinations().to_vec();
    terminals.extend(steiner_points);
    build_tree(instance, closure, &terminals)
}

/// The triple loop. Returns the Steiner points it accepted.
fn contract_triples(instance: &EddInstance, closure: &MetricClosure) -> Result<BTreeSet<Node>> {
    let dest = instance.destinations();
    let k = dest.len();
    let triples = enumerate_triples(instance, closure);
    let mut points = BTreeSet::new();
    if triples.is_empty() {
        return Ok(points);
    }
    let pos = |x: Node| dest.binary_search(&x).expect("destination");
    // Working copy of the closure on destinations; contraction zeroes entries.
    let mut f = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            f[i * k + j] = closure.dist(dest[i], dest[j]);
        }
    }
    for _ in 0..k.saturating_sub(2) {
        let mst = minimum_spanning_tree(dest, |a, b| Some(f[pos(a) * k + pos(b)]))?;
        let save = find_save(&mst.edges);
        let mut best: Option<(i128, &Triple)> = None;
        for t in &triples {
            let [a, b, c] = t.members.map(pos);
            let s = [save.at(a, b), save.at(b, c), save.at(a, c)];
            let hi = *s.iter().max().expect("three values");
            let lo = *s.iter().min().expect("three values");
            let win = hi as i128 + lo as i128 - t.spread as i128;
            // Triples are in lexicographic order; strict > keeps the first.
            if best.is_none_or(|(bw, _)| win > bw) {
                best = Some((win, t));
            }
        }
        let Some((win, t)) = best else { break };
        if win <= 0 {
            break;
        }
        let [a, b, c] = t.members.map(pos);
        for (p, q) in [(a, b), (b, c)] {
            f[p * k + q] = 0;
            f[q * k + p] = 0;
        }
        points.insert(t.centroid);
    }
    Ok(points)
}

/// MST of the closure on `terminals`, expanded to real paths, re-spanned and
/// pruned so that every leaf is a destination.
pub(crate) fn build_tree(
    instance: &EddInstance,
    closure: &MetricClosure,
    terminals: &[Node],
) -> Result<SteinerTree> {
    let skeleton = minimum_spanning_tree(terminals, |a, b| Some(closure.dist(a, b)))?;
    let net = instance.network();
    let mut links = BTreeSet::new();
    let mut vertices: BTreeSet<Node> = terminals.iter().copied().collect();
    for &(a, b, _) in &skeleton.edges {
        let path = closure.path(a, b);
        for pair in path.windows(2) {
            links.insert((pair[0].min(pair[1]), pair[0].max(pair[1])));
        }
        vertices.extend(path);
    }
    let links: Vec<(Node, Node, Weight)> = links
        .into_iter()
        .map(|(a, b)| (a, b, crate::graph::Topology::weight(net, a, b).expect("path edge")))
        .collect();
    let verts: Vec<Node> = vertices.into_iter().collect();
    // Overlapping paths can close cycles; re-span before pruning.
    let spanning = minimum_spanning_tree_of_edges(&verts, &links)?;
    Ok(prune_tree(spanning.edges, |v| instance.is_destination(v), terminals.first().copied()))
}

/// Repeatedly strips leaves that are not destinations.
pub(crate) fn prune_tree(
    mut edges: Vec<(Node, Node, Weight)>,
    keep: impl Fn(Node) -> bool,
    lone: Option<Node>,
) -> SteinerTree {
    loop {
        let mut degree = alloc::collections::BTreeMap::<Node, usize>::new();
        for &(a, b, _) in &edges {
            *degree.entry(a).or_default() += 1;
            *degree.entry(b).or_default() += 1;
        }
        let before = edges.len();
        edges.retain(|&(a, b, _)| {
            !((degree[&a] == 1 && !keep(a)) || (degree[&b] == 1 && !keep(b)))
        });
        if edges.len() == before {
            break;
        }
    }
    edges.sort_unstable();
    let mut vertices: BTreeSet<Node> = edges.iter().flat_map(|&(a, b, _)| [a, b]).collect();
    if vertices.is_empty() {
        vertices.extend(lone);
    }
    let total_weight = edges.iter().map(|e| e.2).sum();
    SteinerTree { vertices, edges, total_weight }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::all_pairs_shortest;
    use crate::graph::sample;
    use crate::EdgeServerNetwork;

    #[test]
    fn save_single_edge() {
        let t = find_save(&[(1, 2, 7)]);
        assert_eq!(t.get(1, 2), Some(7));
        assert_eq!(t.get(2, 1), Some(7));
    }

    #[test]
    fn save_star() {
        let t = find_save(&[(1, 2, 3), (1, 3, 5)]);
        assert_eq!(t.get(2, 3), Some(5));
        assert_eq!(t.get(1, 2), Some(3));
        assert_eq!(t.get(1, 3), Some(5));
    }

    #[test]
    fn save_empty() {
        let t = find_save(&[]);
        assert!(t.vertices().is_empty());
    }

    #[test]
    fn save_ties_do_not_matter_for_values() {
        let t = find_save(&[(1, 2, 4), (2, 3, 4), (3, 4, 1)]);
        assert_eq!(t.get(1, 4), Some(4));
        assert_eq!(t.get(3, 4), Some(1));
        assert_eq!(t.get(2, 4), Some(4));
    }

    #[test]
    fn triple_counts() {
        let net = sample::ten_server_network();
        let mc = all_pairs_shortest(&net).unwrap();
        let two = EddInstance::new(net.clone(), [1, 2], 100, 110).unwrap();
        assert!(enumerate_triples(&two, &mc).is_empty());
        let five = EddInstance::new(net.clone(), [1, 2, 3, 4, 5], 100, 110).unwrap();
        assert_eq!(enumerate_triples(&five, &mc).len(), 10);
        let all = EddInstance::new(net, 1..=10, 100, 110).unwrap();
        assert!(enumerate_triples(&all, &mc).is_empty());
    }

    #[test]
    fn centroid_of_first_triple() {
        let inst = sample::ten_server_instance();
        let mc = all_pairs_shortest(inst.network()).unwrap();
        let triples = enumerate_triples(&inst, &mc);
        assert_eq!(triples.len(), 35);
        let t = triples[0];
        assert_eq!(t.members, [1, 2, 3]);
        // Exhaustive scan over the non-destinations 5, 8, 10.
        let mut best = (Weight::MAX, 0);
        for v in [5, 8, 10] {
            let s: Weight = [1, 2, 3].iter().map(|&x| mc.dist(v, x)).sum();
            best = best.min((s, v));
        }
        assert_eq!((t.spread, t.centroid), best);
        assert_eq!(best, (25, 5));
    }

    #[test]
    fn ten_server_tree() {
        let inst = sample::ten_server_instance();
        let mc = all_pairs_shortest(inst.network()).unwrap();
        let st = approximate_steiner(&inst, &mc).unwrap();
        let want = [(1, 2, 5), (1, 3, 6), (2, 4, 5), (3, 7, 3), (4, 10, 2), (6, 7, 3), (9, 10, 1)];
        assert_eq!(st.edges, want);
        assert_eq!(st.total_weight, 25);
    }

    #[test]
    fn lone_destination() {
        let net = sample::ten_server_network();
        let inst = EddInstance::new(net, [6], 100, 110).unwrap();
        let mc = all_pairs_shortest(inst.network()).unwrap();
        let st = approximate_steiner(&inst, &mc).unwrap();
        assert!(st.edges.is_empty());
        assert_eq!(st.vertices.iter().copied().collect::<Vec<_>>(), vec![6]);
        assert_eq!(st.total_weight, 0);
    }

    #[test]
    fn contraction_picks_up_a_hub() {
        // Leaves are pairwise 4 apart: every save is 4 and the hub spread is
        // 6, so the win is 4 + 4 - 6 = 2.
        let net = EdgeServerNetwork::new(4, [(1, 4, 2), (2, 4, 2), (3, 4, 2)]).unwrap();
        let inst = EddInstance::new(net, [1, 2, 3], 1, 10).unwrap();
        let mc = all_pairs_shortest(inst.network()).unwrap();
        assert_eq!(contract_triples(&inst, &mc).unwrap().into_iter().collect::<Vec<_>>(), vec![4]);
        let st = approximate_steiner(&inst, &mc).unwrap();
        assert_eq!(st.total_weight, 6);
    }
}
