use std::fmt::Write;
use std::path::Path;

use semiprob::automata::support_semigroup;
use semiprob::green::GreenStructure;
use semiprob::stochastic::io::matrix_to_json;
use semiprob::stochastic::{
    doob_analyze, format_rational, green_test, reduced_echelon_form, Rational, Relation, StochasticMatrix,
};
use semiprob::Error;
use serde_json::{json, Value};

use crate::input;
use crate::report::{list, CliError, Report};
use crate::Common;

pub enum Mode {
    Green(Vec<String>),
    Doob(usize),
    Classify,
}

fn rows_json(rows: &[Vec<Rational>]) -> Value {
    rows.iter().map(|r| r.iter().map(format_rational).collect::<Vec<_>>()).collect::<Vec<_>>().into()
}

fn rows_text(rows: &[Vec<Rational>], indent: &str) -> String {
    rows.iter()
        .map(|r| format!("{indent}{}\n", r.iter().map(format_rational).collect::<Vec<_>>().join(" ")))
        .collect()
}

fn pick(ms: &[StochasticMatrix], i: usize) -> Result<&StochasticMatrix, Error> {
    ms.get(i).ok_or(Error::IndexOutOfRange { index: i, len: ms.len() })
}

fn index(arg: &str) -> Result<usize, Error> {
    arg.parse().map_err(|_| Error::Parse(format!("'{arg}' is not a matrix index")))
}

pub fn run(path: &Path, _common: &Common, mode: Mode) -> Result<Report, CliError> {
    let ms = input::matrices(path)?;
    let mut text = String::new();
    let json = match mode {
        Mode::Green(args) => {
            let (a, b) = (index(&args[0])?, index(&args[1])?);
            let rel: Relation = args[2].parse()?;
            let verdict = green_test(pick(&ms, a)?, pick(&ms, b)?, rel)?;
            let _ = writeln!(text, "{a} {:?} {b}: {}", rel, verdict.holds);
            let mut witnesses = Vec::new();
            for w in &verdict.witnesses {
                let ok = w.verify(&ms[a], &ms[b]);
                let _ = writeln!(text, "{:?} witness (verified: {ok})", w.side);
                let _ = write!(text, "  forward:\n{}", rows_text(w.forward.rows(), "    "));
                let _ = write!(text, "  backward:\n{}", rows_text(w.backward.rows(), "    "));
                witnesses.push(json!({
                    "side": w.side,
                    "forward": matrix_to_json(&w.forward),
                    "backward": matrix_to_json(&w.backward),
                    "verified": ok,
                }));
            }
            let forms: Vec<Value> = [a, b].iter().map(|&i| rows_json(&reduced_echelon_form(&ms[i]))).collect();
            json!({
                "schema": "semiprob.stochastic.green.v1",
                "a": a, "b": b, "relation": rel, "holds": verdict.holds,
                "witnesses": witnesses, "canonical_forms": forms,
            })
        }
        Mode::Doob(i) => {
            let e = pick(&ms, i)?;
            let d = doob_analyze(e)?;
            let _ = writeln!(text, "matrix {i}: idempotent {}, rank {}", d.is_idempotent, d.rank);
            let mut out = serde_json::to_value(&d).expect("reports serialize");
            let obj = out.as_object_mut().expect("analysis is an object");
            obj.insert("schema".into(), json!("semiprob.stochastic.doob.v1"));
            obj.insert("matrix".into(), json!(i));
            if d.is_idempotent {
                let exact = d.reconstruct() == e.rows();
                let _ = writeln!(text, "permutation {}", list(&d.permutation));
                for (b, (states, row)) in d.blocks.iter().zip(&d.block_rows).enumerate() {
                    let w: Vec<String> = row.iter().map(format_rational).collect();
                    let _ = writeln!(text, "block {b}: states {}, row {}", list(states), list(&w));
                }
                let _ = writeln!(text, "transient {}", list(&d.transient));
                let _ = write!(text, "absorption:\n{}", rows_text(&d.absorption, "  "));
                let _ = writeln!(text, "reconstruction exact: {exact}");
                obj.insert("block_rows".into(), rows_json(&d.block_rows));
                obj.insert("absorption".into(), rows_json(&d.absorption));
                obj.insert("lower".into(), rows_json(&d.lower));
                obj.insert("reconstruction_exact".into(), json!(exact));
            }
            out
        }
        Mode::Classify => {
            let (ts, dists) = support_semigroup(&ms)?;
            let s = &ts.semigroup;
            let g = GreenStructure::new(s);
            let _ = writeln!(text, "support semigroup: {} elements on {} states", s.len(), s.degree());
            let elements: Vec<&[usize]> = s.elements().iter().map(|t| t.images()).collect();
            for (i, t) in s.elements().iter().enumerate() {
                let _ = writeln!(text, "  {i}: {t} (J{})", g.j_class_of(i));
            }
            let mut per_matrix = Vec::new();
            for (k, d) in dists.iter().enumerate() {
                let terms: Vec<String> = d.support().map(|(x, w)| format!("{}*s{x}", format_rational(w))).collect();
                let _ = writeln!(text, "matrix {k} = {}", terms.join(" + "));
                let weights: serde_json::Map<String, Value> =
                    d.support().map(|(x, w)| (x.to_string(), json!(format_rational(w)))).collect();
                per_matrix.push(json!({ "matrix": k, "element": ts.letter_map[k], "distribution": weights }));
            }
            let _ = writeln!(text, "J-classes: {}", g.j_classes().len());
            json!({
                "schema": "semiprob.stochastic.classify.v1",
                "degree": s.degree(),
                "size": s.len(),
                "elements": elements,
                "j_classes": g.j_classes(),
                "matrices": per_matrix,
            })
        }
    };
    Ok(Report::new(json, text))
}
