//! Plain-text instance and solution files.
//!
//! ```text
//! edd-instance 1
//! nodes 4
//! gamma 100
//! llimit 110
//! destinations 2 4
//! edges 3
//! 1 2 5
//! 2 3 7
//! 3 4 1
//! ```
//!
//! Blank lines and `#` comments are ignored. A solution file lists
//! `total`, `c2e` and `e2e` costs, then `C <v>` per transit server,
//! `E <parent> <child> <w>` per link and `D <v> <depth>` per covered server.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use edd_core::{EddInstance, EddSolution, EdgeServerNetwork, Node, Topology, Weight};

use crate::error::{parse_err, read, write, Result};

const MAGIC: &str = "edd-instance 1";

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number<T: std::str::FromStr>(line: usize, token: &str) -> Result<T> {
    token.parse().map_err(|_| parse_err(line, format!("expected a non-negative integer, found {token:?}")))
}

fn keyed<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    key: &str,
    last_line: usize,
) -> Result<(usize, Vec<&'a str>)> {
    let (line, tokens) = lines.next().ok_or_else(|| parse_err(last_line + 1, format!("missing `{key}` line")))?;
    if tokens[0] != key {
        return Err(parse_err(line, format!("expected `{key}`, found `{}`", tokens[0])));
    }
    Ok((line, tokens[1..].to_vec()))
}

fn single<T: std::str::FromStr>(line: usize, key: &str, args: &[&str]) -> Result<T> {
    match args {
        [x] => number(line, x),
        _ => Err(parse_err(line, format!("`{key}` takes exactly one value"))),
    }
}

pub fn parse_instance(text: &str) -> Result<EddInstance> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, t)) if t.join(" ") == MAGIC => {}
        Some((line, _)) => return Err(parse_err(line, format!("expected header `{MAGIC}`"))),
        None => return Err(parse_err(1, "empty instance file")),
    }
    let (l, a) = keyed(&mut lines, "nodes", 1)?;
    let n: usize = single(l, "nodes", &a)?;
    let (l, a) = keyed(&mut lines, "gamma", l)?;
    let gamma: Weight = single(l, "gamma", &a)?;
    let (l, a) = keyed(&mut lines, "llimit", l)?;
    let l_limit: Weight = single(l, "llimit", &a)?;
    let (l, a) = keyed(&mut lines, "destinations", l)?;
    let mut destinations = Vec::new();
    let mut seen = BTreeSet::new();
    for tok in a {
        let v: Node = number(l, tok)?;
        if v == 0 || v > n {
            return Err(parse_err(l, format!("destination {v} is out of range 1..={n}")));
        }
        if !seen.insert(v) {
            return Err(parse_err(l, format!("duplicate destination {v}")));
        }
        destinations.push(v);
    }
    let (mut last, a) = keyed(&mut lines, "edges", l)?;
    let m: usize = single(last, "edges", &a)?;
    let mut edges = Vec::with_capacity(m);
    let mut pairs = BTreeSet::new();
    for _ in 0..m {
        let (line, t) = lines.next().ok_or_else(|| parse_err(last + 1, format!("expected {m} edge lines")))?;
        last = line;
        let [u, v, w] = t[..] else {
            return Err(parse_err(line, "edge lines read `<u> <v> <w>`"));
        };
        let (u, v, w): (Node, Node, Weight) = (number(line, u)?, number(line, v)?, number(line, w)?);
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(parse_err(line, format!("node {x} is out of range 1..={n}")));
            }
        }
        if u == v {
            return Err(parse_err(line, format!("self-loop on node {u}")));
        }
        if w == 0 {
            return Err(parse_err(line, "edge weight must be positive"));
        }
        if !pairs.insert((u.min(v), u.max(v))) {
            return Err(parse_err(line, format!("duplicate edge at line {line}")));
        }
        edges.push((u, v, w));
    }
    if let Some((line, _)) = lines.next() {
        return Err(parse_err(line, "unexpected content after the edge list"));
    }
    let network = EdgeServerNetwork::new(n, edges)?;
    Ok(EddInstance::new(network, destinations, gamma, l_limit)?)
}

pub fn format_instance(instance: &EddInstance) -> String {
    let net = instance.network();
    let mut out = String::new();
    let dests: Vec<String> = instance.destinations().iter().map(|d| d.to_string()).collect();
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(out, "nodes {}", instance.node_count());
    let _ = writeln!(out, "gamma {}", instance.gamma());
    let _ = writeln!(out, "llimit {}", instance.l_limit());
    let _ = writeln!(out, "destinations {}", dests.join(" "));
    let _ = writeln!(out, "edges {}", net.edges().len());
    for e in net.edges() {
        let _ = writeln!(out, "{} {} {}", e.u.min(e.v), e.u.max(e.v), e.w);
    }
    out
}

pub fn load_instance(path: impl AsRef<Path>) -> Result<EddInstance> {
    parse_instance(&read(path.as_ref())?)
}

pub fn save_instance(instance: &EddInstance, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), &format_instance(instance))
}

pub fn format_solution(instance: &EddInstance, sol: &EddSolution) -> String {
    let net = instance.network();
    let mut out = String::new();
    let _ = writeln!(out, "total {}", sol.total_cost);
    let _ = writeln!(out, "c2e {}", sol.cost_c2e);
    let _ = writeln!(out, "e2e {}", sol.cost_e2e);
    for v in &sol.c2e {
        let _ = writeln!(out, "C {v}");
    }
    for &(p, c) in &sol.e2e {
        let w = net.weight(p, c).unwrap_or(0);
        let _ = writeln!(out, "E {p} {c} {w}");
    }
    for (v, d) in &sol.depth {
        let _ = writeln!(out, "D {v} {d}");
    }
    out
}

/// Reads a solution file back; link weights are taken as written.
pub fn parse_solution(text: &str) -> Result<EddSolution> {
    let mut totals: [Option<Weight>; 3] = [None; 3];
    let mut c2e = BTreeSet::new();
    let mut e2e = BTreeSet::new();
    let mut depth = BTreeMap::new();
    for (line, t) in content_lines(text) {
        match (t[0], &t[1..]) {
            ("total", [x]) => totals[0] = Some(number(line, x)?),
            ("c2e", [x]) => totals[1] = Some(number(line, x)?),
            ("e2e", [x]) => totals[2] = Some(number(line, x)?),
            ("C", [v]) => {
                c2e.insert(number::<Node>(line, v)?);
            }
            ("E", [p, c, w]) => {
                let _: Weight = number(line, w)?;
                e2e.insert((number(line, p)?, number(line, c)?));
            }
            ("D", [v, d]) => {
                depth.insert(number::<Node>(line, v)?, number::<Weight>(line, d)?);
            }
            _ => return Err(parse_err(line, format!("unrecognized solution line starting with `{}`", t[0]))),
        }
    }
    let [Some(total_cost), Some(cost_c2e), Some(cost_e2e)] = totals else {
        return Err(parse_err(1, "solution needs `total`, `c2e` and `e2e` lines"));
    };
    Ok(EddSolution { c2e, e2e, depth, cost_c2e, cost_e2e, total_cost })
}

pub fn save_solution(instance: &EddInstance, sol: &EddSolution, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), &format_solution(instance, sol))
}

pub fn load_solution(path: impl AsRef<Path>) -> Result<EddSolution> {
    parse_solution(&read(path.as_ref())?)
}
