//! The 0-1 integer program for EDD, in normalized linear form.
//!
//! Variables: `tau(u, v)` for both orientations of every link plus
//! `tau(cloud, v)` for every server, `visited(v)` for every node including
//! the cloud, and integer `depth(v)` in `[0, l_limit]` with the cloud fixed
//! at 0. Products and conditional equalities are linearized: `tau <= H_u *
//! H_v` becomes two rows, and the depth rule becomes a big-M pair.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{EddInstance, Node, Weight, CLOUD};
use crate::solution::EddSolution;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Var {
    /// Data flows over `from -> to`; `from` is `CLOUD` for cloud links.
    Tau { from: Node, to: Node },
    Visited(Node),
    Depth(Node),
}

impl Var {
    /// LP-safe identifier, e.g. `t_c_2`, `t_1_2`, `h_c`, `l_4`.
    pub fn name(&self) -> String {
        let id = |v: Node| if v == CLOUD { String::from("c") } else { format!("{v}") };
        match *self {
            Var::Tau { from, to } => format!("t_{}_{}", id(from), id(to)),
            Var::Visited(v) => format!("h_{}", id(v)),
            Var::Depth(v) => format!("l_{}", id(v)),
        }
    }

    pub fn is_binary(&self) -> bool {
        !matches!(self, Var::Depth(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

impl Constraint {
    pub fn holds(&self, x: &[i64]) -> bool {
        let lhs: i64 = self.terms.iter().map(|&(i, c)| c * x[i]).sum();
        match self.sense {
            Sense::Le => lhs <= self.rhs,
            Sense::Ge => lhs >= self.rhs,
            Sense::Eq => lhs == self.rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpModel {
    pub vars: Vec<Var>,
    /// `(lower, upper)` per variable.
    pub bounds: Vec<(i64, i64)>,
    pub objective: Vec<(usize, i64)>,
    pub constraints: Vec<Constraint>,
    /// Big-M used in the depth rows: `l_limit + max link weight`.
    pub big_m: i64,
    index: BTreeMap<Var, usize>,
}

impl IpModel {
    pub fn var_index(&self, var: Var) -> Option<usize> {
        self.index.get(&var).copied()
    }

    pub fn count(&self, pred: impl Fn(&Var) -> bool) -> usize {
        self.vars.iter().filter(|v| pred(v)).count()
    }

    pub fn objective_value(&self, x: &[i64]) -> i64 {
        self.objective.iter().map(|&(i, c)| c * x[i]).sum()
    }

    /// Names of constraints and bounds the assignment breaks.
    pub fn violations(&self, x: &[i64]) -> Vec<String> {
        let mut out: Vec<String> = self
            .constraints
            .iter()
            .filter(|c| !c.holds(x))
            .map(|c| c.name.clone())
            .collect();
        for (i, &(lo, hi)) in self.bounds.iter().enumerate() {
            if x[i] < lo || x[i] > hi {
                out.push(format!("bound {}", self.vars[i].name()));
            }
        }
        out
    }

    /// Variable values encoding `sol`. Uncovered servers get depth 0.
    pub fn assignment(&self, sol: &EddSolution) -> Vec<i64> {
        let mut x = vec![0; self.vars.len()];
        let mut set = |var: Var, value: i64| {
            if let Some(i) = self.var_index(var) {
                x[i] = value;
            }
        };
        set(Var::Visited(CLOUD), 1);
        for &v in &sol.c2e {
            set(Var::Tau { from: CLOUD, to: v }, 1);
        }
        for &(from, to) in &sol.e2e {
            set(Var::Tau { from, to }, 1);
        }
        for (&v, &d) in &sol.depth {
            set(Var::Visited(v), 1);
            set(Var::Depth(v), d as i64);
        }
        x
    }
}

pub fn build_model(instance: &EddInstance) -> IpModel {
    let net = instance.network();
    let n = instance.node_count();
    let gamma = instance.gamma() as i64;
    let l_limit = instance.l_limit() as i64;
    let big_m = l_limit + net.max_weight() as i64;

    let mut arcs: Vec<(Node, Node, Weight)> = Vec::new();
    for v in net.nodes() {
        arcs.push((CLOUD, v, instance.gamma()));
    }
    for e in net.edges() {
        arcs.push((e.u, e.v, e.w));
        arcs.push((e.v, e.u, e.w));
    }

    let mut vars = Vec::new();
    let mut bounds = Vec::new();
    for &(from, to, _) in &arcs {
        vars.push(Var::Tau { from, to });
        bounds.push((0, 1));
    }
    for v in 0..=n {
        vars.push(Var::Visited(v));
        bounds.push((0, 1));
    }
    for v in 0..=n {
        vars.push(Var::Depth(v));
        bounds.push(if v == CLOUD { (0, 0) } else { (0, l_limit) });
    }
    let index: BTreeMap<Var, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let tau = |from, to| index[&Var::Tau { from, to }];
    let h = |v| index[&Var::Visited(v)];
    let l = |v| index[&Var::Depth(v)];

    let objective = arcs.iter().map(|&(f, t, w)| (tau(f, t), w as i64)).collect();

    let mut constraints = Vec::new();
    let mut push = |name: String, terms: Vec<(usize, i64)>, sense, rhs| {
        constraints.push(Constraint { name, terms, sense, rhs })
    };
    push(String::from("visit_c"), vec![(h(CLOUD), 1)], Sense::Eq, 1);
    for &r in instance.destinations() {
        push(format!("visit_{r}"), vec![(h(r), 1)], Sense::Eq, 1);
    }
    for &(f, t, _) in &arcs {
        let name = Var::Tau { from: f, to: t }.name();
        push(format!("tail_{name}"), vec![(tau(f, t), 1), (h(f), -1)], Sense::Le, 0);
        push(format!("head_{name}"), vec![(tau(f, t), 1), (h(t), -1)], Sense::Le, 0);
    }
    for v in net.nodes() {
        let mut terms: Vec<(usize, i64)> =
            arcs.iter().filter(|a| a.1 == v).map(|&(f, t, _)| (tau(f, t), 1)).collect();
        terms.push((h(v), -1));
        push(format!("parent_{v}"), terms, Sense::Eq, 0);
    }
    push(
        String::from("cloud_out"),
        net.nodes().map(|v| (tau(CLOUD, v), 1)).collect(),
        Sense::Ge,
        1,
    );
    for &(f, t, w) in &arcs {
        let w = if f == CLOUD { gamma } else { w as i64 };
        let name = Var::Tau { from: f, to: t }.name();
        // tau = 1  =>  depth(t) - depth(f) = w
        push(
            format!("dlo_{name}"),
            vec![(l(t), 1), (l(f), -1), (tau(f, t), -big_m)],
            Sense::Ge,
            w - big_m,
        );
        push(
            format!("dhi_{name}"),
            vec![(l(t), 1), (l(f), -1), (tau(f, t), big_m)],
            Sense::Le,
            w + big_m,
        );
    }
    IpModel { vars, bounds, objective, constraints, big_m, index }
}
