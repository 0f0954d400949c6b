use std::fmt::Write;
use std::path::Path;

use semiprob::decomposition::export::eggbox_dot;
use semiprob::green::GreenStructure;
use semiprob::rees::rees_coordinatize;
use serde_json::{json, Value};

use crate::input;
use crate::report::{list, CliError, Report};
use crate::Common;

pub fn run(path: &Path, common: &Common) -> Result<Report, CliError> {
    let (inst, ts) = input::semigroup(path, common.bound)?;
    let s = &ts.semigroup;
    let g = GreenStructure::new(s);
    let reps = g.idempotent_representatives();
    let k = g.j_classes().len();
    let strictly_below = |a: usize, b: usize| a != b && g.j_leq(a, b);

    let mut text = String::new();
    let _ = writeln!(text, "semigroup: {} elements on {} states", s.len(), s.degree());
    let _ = writeln!(text, "idempotents: {}", list(g.idempotents()));
    let _ = writeln!(text, "J-classes: {k} (D = J: {})", g.d_equals_j());
    let mut classes = Vec::with_capacity(k);
    for j in 0..k {
        let members = &g.j_classes()[j];
        let egg = g.eggbox(j);
        let rank = s.element(members[0]).rank();
        let regular = g.is_regular_class(j);
        let covers: Vec<usize> =
            (0..k).filter(|&b| strictly_below(j, b) && !(0..k).any(|c| strictly_below(j, c) && strictly_below(c, b))).collect();
        let cells: Vec<Vec<Vec<usize>>> =
            egg.cells.iter().map(|row| row.iter().map(|&h| g.h_classes()[h].clone()).collect()).collect();
        let rees = match reps.iter().find(|&&e| g.j_class_of(e) == j) {
            Some(&e) => Some(rees_coordinatize(s, &g, e)?),
            None => None,
        };
        let _ = writeln!(
            text,
            "J{j}: size {}, rank {rank}, {}, {} R x {} L, below {}",
            members.len(),
            if regular { "regular" } else { "null" },
            egg.rows.len(),
            egg.cols.len(),
            list(&covers)
        );
        for row in &cells {
            let cells: Vec<String> = row.iter().map(|c| list(c)).collect();
            let _ = writeln!(text, "  | {} |", cells.join(" | "));
        }
        if let Some(r) = &rees {
            let p = r.parameters();
            let _ = writeln!(
                text,
                "  idempotent {}, maximal subgroup order {}, Rees |Gamma| = {}, |G| = {}, |Lambda| = {}",
                r.group.idempotent, p.group_order, p.gamma, p.group_order, p.lambda
            );
        }
        classes.push(json!({
            "id": j,
            "members": members,
            "rank": rank,
            "regular": regular,
            "r_classes": egg.rows,
            "l_classes": egg.cols,
            "cells": cells,
            "covers": covers,
            "idempotent": rees.as_ref().map(|r| r.group.idempotent),
            "group_order": rees.as_ref().map(|r| r.group.order()),
            "rees": rees.as_ref().map(|r| r.parameters()),
        }));
    }
    let letter_name = |k: usize| {
        let a = ts.letter_map.iter().position(|&e| e == s.generators()[k]).expect("every generator is a letter");
        inst.automaton.alphabet[a].as_str()
    };
    let elements: Vec<Value> = s
        .elements()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let word: Vec<&str> = s.word(i).iter().map(|&k| letter_name(k)).collect();
            json!({ "images": t.images(), "word": word })
        })
        .collect();
    let json = json!({
        "schema": "semiprob.structure.v1",
        "degree": s.degree(),
        "size": s.len(),
        "letters": ts.letter_map,
        "elements": elements,
        "idempotents": g.idempotents(),
        "d_equals_j": g.d_equals_j(),
        "minimal_ideal": g.minimal_ideal(),
        "j_classes": classes,
    });
    let mut report = Report::new(json, text);
    report.dot = Some(eggbox_dot(s, &g));
    Ok(report)
}
