//! Branch and bound over the `tau` variables.
//!
//! Arcs (cloud links included) are decided in ascending weight order, each
//! first set to 1 and then to 0. Partial plans that would close a cycle or
//! push any node past the budget are cut immediately. The bound adds, for
//! every node that still needs a parent, the cheapest arc into it that is
//! not yet decided. A partial plan in which every destination and every
//! relay already has a parent is complete: the rest of the arcs stay at 0.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EddInstance, Node, Weight, CLOUD};
use crate::solution::{solution_cost, EddSolution};
use crate::Result;

pub(crate) struct BranchOutcome {
    pub solution: EddSolution,
    pub complete: bool,
    pub nodes: u64,
}

struct Search<'a> {
    instance: &'a EddInstance,
    arcs: Vec<(Weight, Node, Node)>,
    /// Indices of arcs entering each node, ascending.
    incoming: Vec<Vec<usize>>,
    parent: Vec<Option<(Node, Weight)>>,
    children: Vec<Vec<(Node, Weight)>>,
    out_degree: Vec<u32>,
    cost: Weight,
    best_cost: Weight,
    best_parent: Vec<Option<(Node, Weight)>>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn needs_parent(&self, v: Node) -> bool {
        self.parent[v].is_none() && (self.instance.is_destination(v) || self.out_degree[v] > 0)
    }

    fn run(&mut self, i: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let mut bound = self.cost;
        let mut done = true;
        for v in 1..=self.instance.node_count() {
            if !self.needs_parent(v) {
                continue;
            }
            done = false;
            let list = &self.incoming[v];
            let at = list.partition_point(|&a| a < i);
            match list.get(at) {
                Some(&a) => bound += self.arcs[a].0,
                None => return,
            }
        }
        if done {
            if self.cost < self.best_cost {
                self.best_cost = self.cost;
                self.best_parent.clone_from(&self.parent);
            }
            return;
        }
        if bound >= self.best_cost || i == self.arcs.len() {
            return;
        }
        let (w, from, to) = self.arcs[i];
        if self.parent[to].is_none() && self.can_attach(from, to, w) {
            self.parent[to] = Some((from, w));
            self.children[from].push((to, w));
            self.out_degree[from] += 1;
            self.cost += w;
            self.run(i + 1);
            self.cost -= w;
            self.out_degree[from] -= 1;
            self.children[from].pop();
            self.parent[to] = None;
            if self.exhausted {
                return;
            }
        }
        self.run(i + 1);
    }

    /// Rejects arcs that close a cycle or cannot meet the budget.
    fn can_attach(&self, from: Node, to: Node, w: Weight) -> bool {
        let gamma = self.instance.gamma();
        // Depth of `from` is exact if its chain reaches the cloud, otherwise
        // at least gamma plus the chain below the unattached top.
        let mut depth_from = 0;
        let mut cur = from;
        while cur != CLOUD {
            if cur == to {
                return false;
            }
            match self.parent[cur] {
                Some((p, pw)) => {
                    depth_from += pw;
                    cur = p;
                }
                None => {
                    depth_from += gamma;
                    break;
                }
            }
        }
        depth_from + w + self.height(to) <= self.instance.l_limit()
    }

    fn height(&self, v: Node) -> Weight {
        self.children[v].iter().map(|&(c, w)| w + self.height(c)).max().unwrap_or(0)
    }
}

pub(crate) fn branch_and_bound(instance: &EddInstance, budget: u64) -> Result<BranchOutcome> {
    let net = instance.network();
    let n = instance.node_count();
    let mut arcs: Vec<(Weight, Node, Node)> = net.nodes().map(|v| (instance.gamma(), CLOUD, v)).collect();
    for e in net.edges() {
        arcs.push((e.w, e.u, e.v));
        arcs.push((e.w, e.v, e.u));
    }
    arcs.sort_unstable();
    let mut incoming = vec![Vec::new(); n + 1];
    for (i, &(_, _, to)) in arcs.iter().enumerate() {
        incoming[to].push(i);
    }

    // First incumbent: every destination fed directly.
    let mut best_parent = vec![None; n + 1];
    for &r in instance.destinations() {
        best_parent[r] = Some((CLOUD, instance.gamma()));
    }
    let best_cost = instance.gamma() * instance.destinations().len() as Weight;

    let mut search = Search {
        instance,
        arcs,
        incoming,
        parent: vec![None; n + 1],
        children: vec![Vec::new(); n + 1],
        out_degree: vec![0; n + 1],
        cost: 0,
        best_cost,
        best_parent,
        nodes: 0,
        budget,
        exhausted: false,
    };
    search.run(0);

    let mut c2e = Vec::new();
    let mut e2e = Vec::new();
    for (v, p) in search.best_parent.iter().enumerate() {
        match p {
            Some((CLOUD, _)) => c2e.push(v),
            Some((p, _)) => e2e.push((*p, v)),
            None => {}
        }
    }
    let solution = solution_cost(instance, c2e, e2e)?;
    Ok(BranchOutcome { solution, complete: !search.exhausted, nodes: search.nodes })
}
