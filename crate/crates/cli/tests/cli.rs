use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "corpus", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiprob")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = run(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn structure_of_flip_flop_and_f3() {
    let ff = json(&["structure", &corpus("flip_flop.json")]);
    assert_eq!(ff["schema"], "semiprob.structure.v1");
    let classes = ff["j_classes"].as_array().unwrap();
    assert_eq!(classes.len(), 2);
    let orders: Vec<u64> = classes.iter().map(|c| c["group_order"].as_u64().unwrap()).collect();
    assert_eq!(orders, [1, 1]);

    let f3 = json(&["structure", &corpus("f3.json")]);
    let mut ranks: Vec<u64> = f3["j_classes"].as_array().unwrap().iter().map(|c| c["rank"].as_u64().unwrap()).collect();
    ranks.sort_unstable();
    assert_eq!(ranks, [1, 2, 3]);
    assert_eq!(f3["size"], 27);
}

#[test]
fn malformed_delta_exits_2_with_field_path() {
    let out = run(&["structure", &corpus("bad_delta.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("delta[1]"));
}

#[test]
fn missing_file_and_unknown_flag_exit_2() {
    assert_eq!(run(&["structure", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(run(&["structure", &corpus("c2.json"), "--frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["stochastic", &corpus("doob.txt")]).status.code(), Some(2));
}

#[test]
fn holonomy_of_c6_lists_c2_and_c3() {
    let out = run(&["holonomy", &corpus("c6.json"), "--verify"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("groups [C2 C3]"));
    assert!(text.contains("verify covering (computed): PASS"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn holonomy_of_flip_flop_has_one_trivial_level() {
    let v = json(&["holonomy", &corpus("flip_flop.json"), "--verify"]);
    assert_eq!(v["schema"], "semiprob.holonomy.v1");
    assert_eq!(v["levels"].as_array().unwrap().len(), 1);
    assert_eq!(v["levels"][0]["group_order"], 1);
    assert_eq!(v["verify"]["pass"], true);
    assert_eq!(v["zeiger"]["size"], 3);
}

#[test]
fn corrupted_cascade_fails_with_counterexample() {
    let mut v = json(&["holonomy", &corpus("c3.json")]);
    v["covering"]["witnesses"][0] = serde_json::json!([0, 1, 2]);
    let dir = std::env::temp_dir().join(format!("semiprob-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("cascade.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let out = run(&["holonomy", &corpus("c3.json"), "--cascade", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("counterexample: generator 0 at cascade state"));
    assert!(text.contains("FAIL"));

    let good = dir.join("good.json");
    std::fs::write(&good, serde_json::to_string(&v["covering"]).unwrap().replace("[0,1,2]", "[1,2,0]")).unwrap();
    let out = run(&["holonomy", &corpus("c3.json"), "--cascade", good.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verify"]["pass"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn stochastic_green_on_the_support_counterexample() {
    let v = json(&["stochastic", &corpus("support_abc.txt"), "--green", "0", "1", "J"]);
    assert_eq!(v["holds"], true);
    let v = json(&["stochastic", &corpus("support_abc.txt"), "--green", "0", "1", "L"]);
    assert_eq!(v["holds"], false);

    let v = json(&["stochastic", &corpus("support_abc.txt"), "--classify"]);
    assert_eq!(v["size"], 3);
    assert_eq!(v["j_classes"].as_array().unwrap().len(), 3);
}

#[test]
fn doob_on_equal_rows_has_one_block() {
    let v = json(&["stochastic", &corpus("doob.txt"), "--doob", "0"]);
    assert_eq!(v["blocks"].as_array().unwrap().len(), 1);
    assert_eq!(v["rank"], 1);
    assert_eq!(v["reconstruction_exact"], true);
    let v = json(&["stochastic", &corpus("doob.txt"), "--doob", "1"]);
    assert_eq!(v["blocks"], serde_json::json!([[0, 1], [2]]));
    assert_eq!(v["transient"], serde_json::json!([3]));
    let v = json(&["stochastic", &corpus("doob.txt"), "--doob", "2"]);
    assert_eq!(v["is_idempotent"], false);
}

#[test]
fn stochastic_error_codes() {
    let out = run(&["stochastic", &corpus("bad_row.txt"), "--classify"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["stochastic", &corpus("mixed.txt"), "--classify"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("matrix 0"));
}

#[test]
fn reps_counts_and_clash() {
    let v = json(&["reps", &corpus("flip_flop.json"), "--field", "3"]);
    let dims: Vec<u64> = v["simples"].as_array().unwrap().iter().map(|s| s["dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 1]);

    let v = json(&["reps", &corpus("f2.json"), "--field", "5"]);
    assert_eq!(v["simples"].as_array().unwrap().len(), 3);

    let out = run(&["reps", &corpus("f2.json"), "--field", "2"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("[2]"));
    assert_eq!(run(&["reps", &corpus("f2.json"), "--field", "6"]).status.code(), Some(3));
}

#[test]
fn reps_holonomy_table() {
    let v = json(&["reps", &corpus("c2.json"), "--field", "3", "--holonomy"]);
    let rows = v["holonomy"]["modules"].as_array().unwrap();
    for r in rows {
        assert_eq!(r["dim_m"].as_u64().unwrap() - r["dim_n"].as_u64().unwrap(), r["dim_top"].as_u64().unwrap());
    }
    assert_eq!(v["holonomy"]["m"], 1);
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let automata = ["flip_flop", "c2", "c3", "c6", "s3", "f2", "f3", "random_a", "random_b", "flip_flop_wr_c2"];
    let mut invocations: Vec<Vec<String>> = Vec::new();
    for a in automata {
        let path = corpus(&format!("{a}.json"));
        for fmt in ["text", "json", "dot"] {
            invocations.push(vec!["structure".into(), path.clone(), "--format".into(), fmt.into()]);
            invocations.push(vec!["holonomy".into(), path.clone(), "--verify".into(), "--format".into(), fmt.into()]);
        }
        invocations.push(vec!["reps".into(), path.clone(), "--field".into(), "7".into(), "--format".into(), "json".into()]);
    }
    for mode in [&["--classify"][..], &["--green", "0", "1", "J"], &["--green", "1", "2", "R"]] {
        let mut args = vec!["stochastic".to_string(), corpus("support_abc.txt")];
        args.extend(mode.iter().map(|s| s.to_string()));
        invocations.push(args);
    }
    for i in ["0", "1", "2"] {
        invocations.push(vec!["stochastic".into(), corpus("doob.txt"), "--doob".into(), i.into()]);
    }
    for args in &invocations {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.status.code(), second.status.code(), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert!(!first.stdout.is_empty(), "{args:?}");
    }
}
