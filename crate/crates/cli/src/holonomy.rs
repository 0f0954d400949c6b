use std::fmt::Write;
use std::path::{Path, PathBuf};

use semiprob::decomposition::export::{holonomy_report, xs_dot};
use semiprob::decomposition::xs::format_set;
use semiprob::decomposition::{
    holonomy::holonomy_decompose_bounded, prime_factors, verify_covering, zeiger_reduce, Covering, CoveringFailure,
};
use semiprob::{Error, FiniteSemigroup, Transformation};
use serde_json::{json, Value};

use crate::input;
use crate::report::{list, CliError, Report};
use crate::Common;

pub struct Options {
    pub verify: bool,
    pub cascade: Option<PathBuf>,
    pub zeiger_bound: usize,
}

fn parse_covering(text: &str) -> Result<Covering, Error> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let (v, prefix) = match v.get("covering") {
        Some(inner) => (inner, "covering."),
        None => (&v, ""),
    };
    let field = |k: &str| {
        v.get(k).and_then(Value::as_array).ok_or_else(|| Error::Parse(format!("{prefix}{k}: expected an array")))
    };
    let phi = field("phi")?
        .iter()
        .enumerate()
        .map(|(y, x)| match x {
            Value::Null => Ok(None),
            x => x
                .as_u64()
                .map(|x| Some(x as usize))
                .ok_or_else(|| Error::Parse(format!("{prefix}phi[{y}]: expected a state index or null"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let witnesses = field("witnesses")?
        .iter()
        .enumerate()
        .map(|(k, w)| {
            let path = format!("{prefix}witnesses[{k}]");
            let images = w
                .as_array()
                .ok_or_else(|| Error::Parse(format!("{path}: expected an array of images")))?
                .iter()
                .map(|i| i.as_u64().map(|i| i as usize).ok_or_else(|| Error::Parse(format!("{path}: expected an index"))))
                .collect::<Result<Vec<_>, _>>()?;
            Transformation::new(images).map_err(|e| Error::Parse(format!("{path}: {e}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Covering { phi, witnesses })
}

fn covering_json(c: &Covering) -> Value {
    let witnesses: Vec<&[usize]> = c.witnesses.iter().map(Transformation::images).collect();
    json!({ "phi": c.phi, "witnesses": witnesses })
}

/// Human-readable description of a failed covering check, and its JSON form.
fn describe_failure(c: &Covering, s: &FiniteSemigroup, f: &CoveringFailure) -> (String, Value) {
    match *f {
        CoveringFailure::NotSurjective { missing } => {
            (format!("state {missing} is not the image of any cascade state"), json!({ "not_surjective": missing }))
        }
        CoveringFailure::WrongShape { ref detail } => (format!("malformed covering: {detail}"), json!({ "shape": detail })),
        CoveringFailure::Square { y, generator } => {
            let x = c.phi[y].expect("failures are reported on the domain");
            let ty = c.witnesses[generator].apply(y);
            let expected = s.element(s.generators()[generator]).apply(x);
            let text = format!(
                "generator {generator} at cascade state {y}: phi({y}) = {x} maps to {expected}, \
                 but the witness sends {y} to {ty} with phi({ty}) = {}",
                c.phi[ty].map_or("undefined".to_string(), |v| v.to_string())
            );
            let json = json!({
                "generator": generator, "state": y, "phi_state": x,
                "expected": expected, "witness_image": ty, "phi_witness_image": c.phi[ty],
            });
            (text, json)
        }
    }
}

pub fn run(path: &Path, common: &Common, opts: &Options) -> Result<Report, CliError> {
    let (_, ts) = input::semigroup(path, common.bound)?;
    let s = &ts.semigroup;
    let hd = holonomy_decompose_bounded(s, common.bound)?;
    let primes = prime_factors(&hd)?;
    let mut json = serde_json::to_value(holonomy_report(&hd, primes.clone())).expect("reports serialize");

    let mut text = String::new();
    let _ = writeln!(text, "states: {}, height: {}, levels: {}", s.degree(), hd.height(), hd.levels.len());
    for (i, level) in hd.levels.iter().enumerate() {
        let r = level.report();
        let reps: Vec<String> = level.reps.iter().map(|h| format_set(h.set)).collect();
        let _ = writeln!(
            text,
            "level {}: height {}, representatives {}, bricks {}, group orders {}, |X| = {}, |G| = {}",
            i + 1,
            r.height,
            reps.join(" "),
            list(&r.brick_counts),
            list(&r.group_orders),
            r.paving_size,
            r.group_order
        );
    }
    let _ = writeln!(text, "cascade: {} states, |T| = {}", hd.covering.phi.len(), hd.cascade.len());

    let zeiger = match zeiger_reduce(&hd, s, opts.zeiger_bound) {
        Ok(rh) => {
            let (m, n) = rh.dimension();
            let _ = writeln!(text, "reduced holonomy: |U| = {}, dimension (m, n) = ({m}, {n})", rh.monoid.len());
            json!({ "size": rh.monoid.len(), "m": m, "n": n })
        }
        Err(Error::BoundExceeded { bound, .. }) => {
            let _ = writeln!(text, "reduced holonomy: more than {bound} elements, not enumerated");
            json!({ "size": null, "bound": bound })
        }
        Err(e) => return Err(e.into()),
    };
    let names: Vec<&str> = primes.groups.iter().map(|g| g.name.as_str()).collect();
    let _ = writeln!(text, "prime divisors: groups {}, flip-flops {}", list(&names), primes.flip_flops);

    let obj = json.as_object_mut().expect("report is an object");
    obj.insert("zeiger".into(), zeiger);
    obj.insert("covering".into(), covering_json(&hd.covering));

    let mut failed = false;
    if opts.verify {
        let (target, label) = match &opts.cascade {
            Some(p) => (parse_covering(&input::read(p)?)?, p.display().to_string()),
            None => (hd.covering.clone(), "computed".to_string()),
        };
        let mut checks = Vec::new();
        if opts.cascade.is_none() {
            for step in &hd.chain {
                let sound = step.soundness_failure(s);
                let rank = step.rank(&hd.xs);
                let ok = sound.is_none() && rank == step.level as i32 - 1;
                let _ = writeln!(
                    text,
                    "verify level {}: {} (rank {rank}{})",
                    step.level,
                    if ok { "PASS" } else { "FAIL" },
                    sound.map_or(String::new(), |(y, g)| format!(", unsound at state {y} under generator {g}"))
                );
                failed |= !ok;
                checks.push(json!({ "level": step.level, "pass": ok, "rank": rank, "unsound": sound }));
            }
        }
        let (pass, counterexample) = match verify_covering(&target, s) {
            Ok(()) => (true, Value::Null),
            Err(f) => {
                let (t, j) = describe_failure(&target, s, &f);
                let _ = writeln!(text, "counterexample: {t}");
                (false, j)
            }
        };
        let _ = writeln!(text, "verify covering ({label}): {}", if pass { "PASS" } else { "FAIL" });
        failed |= !pass;
        obj.insert(
            "verify".into(),
            json!({ "pass": !failed, "levels": checks, "covering": pass, "counterexample": counterexample }),
        );
    }
    let mut report = Report::new(json, text);
    report.dot = Some(xs_dot(&hd.xs));
    report.failed = failed;
    Ok(report)
}
