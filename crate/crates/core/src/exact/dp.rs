//! Exact solver by dynamic programming over destination subsets.
//!
//! `cost[S][b][v]` is the cheapest tree hanging from server `v` that reaches
//! every destination in `S` within distance `b` of `v`. A tree either joins
//! two subtrees at `v` (split `S`), or leaves `v` through one link `(v, u)`
//! and continues from `u` with budget `b - w`. Since links have positive
//! length, budgets strictly shrink along links and each layer only reads
//! finished layers. A plan then partitions the destinations into groups,
//! each served from its own transit at an extra `gamma`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EddInstance, Node, Topology, Weight};
use crate::solution::{shortest_path_forest, EddSolution};
use crate::Result;

const INF: Weight = Weight::MAX / 4;

/// Rough count of inner-loop steps: merges dominate at `3^k / 2` per cell row.
pub(crate) fn work_estimate(instance: &EddInstance) -> u128 {
    let k = instance.destinations().len() as u32;
    let n = instance.node_count() as u128;
    let layers = instance.slack() as u128 + 1;
    let merges = 3u128.pow(k.min(40)) / 2 + 1;
    let links = 2 * instance.network().edges().len() as u128;
    (merges * n + (1u128 << k.min(64)) * links) * layers
}

pub(crate) fn cell_count(instance: &EddInstance) -> u128 {
    let k = instance.destinations().len() as u32;
    (1u128 << k.min(64)) * (instance.node_count() as u128 + 1) * (instance.slack() as u128 + 1)
}

struct Table {
    stride_b: usize,
    stride_s: usize,
    cost: Vec<Weight>,
}

impl Table {
    #[inline]
    fn at(&self, s: usize, b: usize, v: Node) -> Weight {
        self.cost[s * self.stride_s + b * self.stride_b + v]
    }

    #[inline]
    fn row(&self, s: usize, b: usize) -> &[Weight] {
        let start = s * self.stride_s + b * self.stride_b;
        &self.cost[start..start + self.stride_b]
    }
}

pub(crate) fn solve_dp(instance: &EddInstance) -> Result<EddSolution> {
    let net = instance.network();
    let n = net.node_count();
    let dest = instance.destinations();
    let k = dest.len();
    let full = (1usize << k) - 1;
    let budget = instance.slack() as usize;
    let gamma = instance.gamma();
    let mut bit = vec![0usize; n + 1];
    for (i, &r) in dest.iter().enumerate() {
        bit[r] = 1 << i;
    }

    let stride_b = n + 1;
    let stride_s = stride_b * (budget + 1);
    let mut table = Table { stride_b, stride_s, cost: vec![INF; stride_s * (full + 1)] };
    // The empty set costs nothing anywhere.
    table.cost[..stride_s].fill(0);

    let mut row = vec![INF; stride_b];
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        for b in 0..=budget {
            if b > 0 {
                row.copy_from_slice(table.row(s, b - 1));
            } else {
                row.fill(INF);
            }
            if s.count_ones() == 1 {
                row[dest[low.trailing_zeros() as usize]] = 0;
            }
            let mut sub = rest;
            loop {
                let s1 = low | sub;
                if s1 != s {
                    let (r1, r2) = (table.row(s1, b), table.row(s ^ s1, b));
                    for v in 1..=n {
                        let c = r1[v] + r2[v];
                        if c < row[v] {
                            row[v] = c;
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
            for v in 1..=n {
                for &(u, w) in net.neighbors(v) {
                    let w_us = w as usize;
                    if w_us <= b {
                        let c = table.at(s, b - w_us, u) + w;
                        if c < row[v] {
                            row[v] = c;
                        }
                    }
                }
            }
            let start = s * stride_s + b * stride_b;
            table.cost[start..start + stride_b].copy_from_slice(&row);
        }
    }

    // Cheapest single transit group for each subset.
    let mut group = vec![(INF, 0); full + 1];
    for (s, slot) in group.iter_mut().enumerate().skip(1) {
        let r = table.row(s, budget);
        for v in 1..=n {
            if r[v] + gamma < slot.0 {
                *slot = (r[v] + gamma, v);
            }
        }
    }
    // Partition of all destinations into groups.
    let mut plan = vec![(INF, 0usize); full + 1];
    plan[0] = (0, 0);
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut sub = rest;
        loop {
            let t = low | sub;
            let c = group[t].0 + plan[s ^ t].0;
            if c < plan[s].0 {
                plan[s] = (c, t);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
    }

    let mut transits = Vec::new();
    let mut links = BTreeSet::new();
    let mut s = full;
    while s != 0 {
        let t = plan[s].1;
        let root = group[t].1;
        transits.push(root);
        rebuild(&table, net, &bit, t, budget, root, &mut links);
        s ^= t;
    }
    transits.sort_unstable();
    let mut forest = shortest_path_forest(net, gamma, &transits, &links);
    forest.prune(|v| instance.is_destination(v));
    let sol = forest.price(instance)?;
    debug_assert_eq!(sol.total_cost, plan[full].0);
    Ok(sol)
}

/// Replays the choices behind `cost[s][b][v]`, collecting undirected links.
fn rebuild<T: Topology + ?Sized>(
    table: &Table,
    net: &T,
    bit: &[usize],
    s: usize,
    b: usize,
    v: Node,
    links: &mut BTreeSet<(Node, Node)>,
) {
    let mut stack = vec![(s, b, v)];
    'next: while let Some((s, b, v)) = stack.pop() {
        let val = table.at(s, b, v);
        if s == 0 || (s == bit[v] && val == 0) {
            continue;
        }
        if b > 0 && table.at(s, b - 1, v) == val {
            stack.push((s, b - 1, v));
            continue;
        }
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        let mut sub = rest;
        loop {
            let s1 = low | sub;
            if s1 != s && table.at(s1, b, v) + table.at(s ^ s1, b, v) == val {
                stack.push((s1, b, v));
                stack.push((s ^ s1, b, v));
                continue 'next;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        for &(u, w) in net.neighbors(v) {
            let w_us = w as usize;
            if w_us <= b && table.at(s, b - w_us, u) + w == val {
                links.insert((v.min(u), v.max(u)));
                stack.push((s, b - w_us, u));
                continue 'next;
            }
        }
        unreachable!("every finite cell has a witness");
    }
}
