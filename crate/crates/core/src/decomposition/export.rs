//! Graphviz and JSON renderings of decomposition data.

use std::fmt::Write;

use serde::Serialize;

use super::holonomy::{HolonomyDecomposition, LevelReport};
use super::primes::PrimeFactors;
use super::xs::{format_set, XsEntry, XsPoset};
use crate::green::GreenStructure;
use crate::semigroup::FiniteSemigroup;

/// Hasse diagram of `XS / ~`, one node per class labelled with its sets
/// and height.
pub fn xs_dot(xs: &XsPoset) -> String {
    let mut out = String::from("digraph xs {\n  rankdir=BT;\n  node [shape=box];\n");
    for (c, members) in xs.classes.iter().enumerate() {
        let sets: Vec<String> = members.iter().map(|&i| format_set(xs.sets[i])).collect();
        let _ = writeln!(out, "  c{c} [label=\"{}\\nheight {}\"];", sets.join(" "), xs.height[members[0]]);
    }
    for (a, b) in xs.hasse_edges() {
        let _ = writeln!(out, "  c{a} -> c{b};");
    }
    out.push_str("}\n");
    out
}

/// One table per J-class: rows are R-classes, columns L-classes, cells
/// list their elements with idempotents starred. Edges follow the J-order.
pub fn eggbox_dot(s: &FiniteSemigroup, g: &GreenStructure) -> String {
    let mut out = String::from("digraph eggbox {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for j in 0..g.j_classes().len() {
        let egg = g.eggbox(j);
        let _ = write!(out, "  j{j} [label=<<table border=\"0\" cellborder=\"1\" cellspacing=\"0\">");
        for row in &egg.cells {
            out.push_str("<tr>");
            for &h in row {
                let items: Vec<String> = g
                    .h_classes()[h]
                    .iter()
                    .map(|&x| if s.is_idempotent(x) { format!("*{x}") } else { x.to_string() })
                    .collect();
                let _ = write!(out, "<td>{}</td>", items.join(" "));
            }
            out.push_str("</tr>");
        }
        out.push_str("</table>>];\n");
    }
    let k = g.j_classes().len();
    let below = |a: usize, b: usize| a != b && g.j_leq(a, b);
    for a in 0..k {
        for b in 0..k {
            if below(a, b) && !(0..k).any(|c| below(a, c) && below(c, b)) {
                let _ = writeln!(out, "  j{a} -> j{b};");
            }
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct HolonomyReport {
    pub schema: &'static str,
    pub degree: usize,
    pub height: usize,
    pub xs: Vec<XsEntry>,
    pub levels: Vec<LevelReport>,
    pub cascade_states: usize,
    pub cascade_size: usize,
    pub primes: PrimeFactors,
}

pub fn holonomy_report(hd: &HolonomyDecomposition, primes: PrimeFactors) -> HolonomyReport {
    HolonomyReport {
        schema: "semiprob.holonomy.v1",
        degree: hd.xs.degree,
        height: hd.height(),
        xs: hd.xs.report(),
        levels: hd.report(),
        cascade_states: hd.covering.phi.len(),
        cascade_size: hd.cascade.len(),
        primes,
    }
}
