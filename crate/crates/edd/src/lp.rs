//! The integer program in CPLEX LP text format, for cross-checking with
//! external solvers (CPLEX, Gurobi, HiGHS, CBC, GLPK all read it).

use std::fmt::Write as _;

use edd_core::exact::{IpModel, Sense};
use edd_core::{build_model, EddInstance};

const TERMS_PER_LINE: usize = 8;

fn push_terms(out: &mut String, model: &IpModel, terms: &[(usize, i64)]) {
    if terms.is_empty() {
        out.push_str(" 0 h_c");
        return;
    }
    for (k, &(i, c)) in terms.iter().enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = match (c < 0, k > 0) {
            (true, _) => " -",
            (false, true) => " +",
            (false, false) => "",
        };
        let name = model.vars[i].name();
        match c.unsigned_abs() {
            1 => {
                let _ = write!(out, "{sign} {name}");
            }
            a => {
                let _ = write!(out, "{sign} {a} {name}");
            }
        }
    }
}

pub fn write_lp(model: &IpModel) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "\\ edge data distribution, big-M = {}", model.big_m);
    out.push_str("Minimize\n obj:");
    push_terms(&mut out, model, &model.objective);
    out.push_str("\nSubject To\n");
    for c in &model.constraints {
        let _ = write!(out, " {}:", c.name);
        push_terms(&mut out, model, &c.terms);
        let op = match c.sense {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        };
        let _ = writeln!(out, " {op} {}", c.rhs);
    }
    out.push_str("Bounds\n");
    for (var, &(lo, hi)) in model.vars.iter().zip(&model.bounds) {
        if var.is_binary() {
            continue;
        }
        if lo == hi {
            let _ = writeln!(out, " {} = {lo}", var.name());
        } else {
            let _ = writeln!(out, " {lo} <= {} <= {hi}", var.name());
        }
    }
    for (label, binary) in [("Binaries", true), ("Generals", false)] {
        let _ = writeln!(out, "{label}");
        let names: Vec<String> = model.vars.iter().filter(|v| v.is_binary() == binary).map(|v| v.name()).collect();
        for chunk in names.chunks(TERMS_PER_LINE) {
            let _ = writeln!(out, " {}", chunk.join(" "));
        }
    }
    out.push_str("End\n");
    out
}

pub fn export_lp(instance: &EddInstance) -> String {
    write_lp(&build_model(instance))
}
