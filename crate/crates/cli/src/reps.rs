use std::fmt::Write;
use std::path::Path;

use semiprob::decomposition::holonomy::holonomy_decompose_bounded;
use semiprob::decomposition::zeiger_reduce;
use semiprob::representation::{enumerate_irreducibles, holonomy_principal_indecomposables, PrimeField};
use serde_json::{json, Value};

use crate::input;
use crate::report::{CliError, Report};
use crate::Common;

pub fn run(path: &Path, common: &Common, p: u64, holonomy: bool, zeiger_bound: usize) -> Result<Report, CliError> {
    let field = PrimeField::new(p)?;
    let (_, ts) = input::semigroup(path, common.bound)?;
    let s = &ts.semigroup;
    let irr = enumerate_irreducibles(s, field, common.seed)?;

    let mut text = String::new();
    let _ = writeln!(text, "field: GF({p}), seed {}", common.seed);
    let _ = writeln!(text, "simple modules: {}", irr.len());
    let mut simples = Vec::new();
    for (k, m) in irr.iter().enumerate() {
        let sm = m.summary();
        let _ = writeln!(
            text,
            "  S{k}: dim {}, apex J{} at idempotent {}, |H_e| = {}, induced dim {}",
            sm.dim, sm.apex_j_class, sm.idempotent, sm.group_order, sm.induced_dim
        );
        simples.push(serde_json::to_value(sm).expect("reports serialize"));
    }

    let mut json = json!({
        "schema": "semiprob.reps.v1",
        "field": p,
        "seed": common.seed,
        "size": s.len(),
        "simples": simples,
    });
    if holonomy {
        let hd = holonomy_decompose_bounded(s, common.bound)?;
        let rh = zeiger_reduce(&hd, s, zeiger_bound)?;
        let (m, n) = rh.dimension();
        let pims = holonomy_principal_indecomposables(&rh, field, 0, common.seed)?;
        let _ = writeln!(text, "reduced holonomy: |U| = {}, (m, n) = ({m}, {n})", rh.monoid.len());
        let _ = writeln!(text, "  depth  H-module  |Y_i|  dim M_i  dim N_i  dim M_i/N_i");
        let mut rows: Vec<Value> = Vec::new();
        for pi in &pims {
            let (dm, dn) = (pi.module.dim, pi.radical.dim());
            let _ = writeln!(
                text,
                "  {:>5}  {:>8}  {:>5}  {:>7}  {:>7}  {:>11}",
                pi.depth, pi.group_module, pi.tails, dm, dn, pi.top.dim
            );
            rows.push(json!({
                "depth": pi.depth,
                "idempotent": pi.idempotent,
                "group_module": pi.group_module,
                "group_dim": pi.group_dim,
                "tails": pi.tails,
                "dim_m": dm,
                "dim_n": dn,
                "dim_top": pi.top.dim,
            }));
        }
        json.as_object_mut().expect("report is an object").insert(
            "holonomy".into(),
            json!({ "size": rh.monoid.len(), "m": m, "n": n, "modules": rows }),
        );
    }
    Ok(Report::new(json, text))
}
