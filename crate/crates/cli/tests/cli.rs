use std::path::PathBuf;

use serde_json::Value;
use tpa_cli::{run, Outcome, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, REPORT_VERSION};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn scratch(name: &str, text: &str) -> String {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn tpa(args: &[&str]) -> Outcome {
    run(std::iter::once("tpa").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = tpa(&full);
    assert_eq!(out.code, EXIT_OK, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["version"], REPORT_VERSION);
    v
}

fn schema() -> jsonschema::Validator {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "report-schema.json"].iter().collect();
    let s: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

/// Human rendering of a JSON projective dimension.
fn human(v: &Value) -> String {
    match v {
        Value::String(s) if s == "inf" => "∞".into(),
        Value::Number(n) => n.to_string(),
        other => panic!("not a dimension: {other}"),
    }
}

fn every_command() -> Vec<Vec<String>> {
    let q = fixture("fifteen.tqa");
    let m = fixture("five_slots.mod");
    let e7 = fixture("e7_mod_b7.mod");
    let seq = fixture("pe1.seq");
    let cmds: Vec<Vec<&str>> = vec![
        vec!["analyze", &q],
        vec!["pdim", "path", "a9*a8*b7", &q],
        vec!["pdim", "simple", "8", &q],
        vec!["pdim", "module", &q, &m],
        vec!["syzygy", &q, &m, "--iterate", "2"],
        vec!["generic", &q, &seq],
        vec!["spectrum", &q, &seq],
        vec!["oracle", &q, &e7],
        vec!["graph", &q, &m, "--critical"],
    ];
    cmds.into_iter()
        .map(|c| c.into_iter().map(String::from).collect())
        .collect()
}

#[test]
fn json_reports_are_schema_valid_and_deterministic() {
    let validator = schema();
    for cmd in every_command() {
        let args: Vec<&str> = cmd.iter().map(String::as_str).collect();
        let mut full = vec!["--json"];
        full.extend_from_slice(&args);
        let first = tpa(&full);
        let second = tpa(&full);
        assert_eq!(first.code, EXIT_OK, "{args:?}: {}", first.stderr);
        assert_eq!(first.stdout, second.stdout, "{args:?} is not deterministic");
        let v: Value = serde_json::from_str(&first.stdout).unwrap();
        let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");
    }
}

#[test]
fn schema_rejects_malformed_dimensions() {
    let validator = schema();
    let bad = serde_json::json!({
        "version": 1,
        "command": "pdim-simple",
        "result": { "vertex": "1", "cyclebound": true, "pdim": "infinity" }
    });
    assert!(!validator.is_valid(&bad));
}

#[test]
fn analyze_fifteen_vertex_fixture() {
    let v = json(&["analyze", &fixture("fifteen.tqa")]);
    let r = &v["result"];
    let cyclebound: Vec<&str> = r["cyclebound"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(cyclebound, ["1", "2", "3", "4", "5", "6", "7"]);
    assert_eq!(r["findim"]["findim"], 4);
    assert_eq!(r["findim"]["m"], 7);
    assert_eq!(r["findim"]["bracket"], serde_json::json!([3, 4]));
    let by_name = |n: &str| r["vertices"].as_array().unwrap().iter().find(|x| x["name"] == n).unwrap().clone();
    assert_eq!(by_name("10")["c"], 5);
    assert_eq!(by_name("8")["c"], 7);
    assert_eq!(by_name("7")["c"], "inf");
}

#[test]
fn human_and_json_agree_on_analyze() {
    let q = fixture("fifteen.tqa");
    let v = json(&["analyze", &q]);
    let text = tpa(&["analyze", &q]).stdout;
    for row in v["result"]["vertices"].as_array().unwrap() {
        let line = text
            .lines()
            .find(|l| l.split_whitespace().next() == Some(row["name"].as_str().unwrap()))
            .unwrap();
        let cells: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(cells[1], human(&row["c"]));
        assert_eq!(cells[2], human(&row["b"]));
        assert_eq!(cells[4], human(&row["pdim_simple"]));
    }
    assert!(text.contains(&format!("findim = {}", v["result"]["findim"]["findim"])));
    for t in v["result"]["tree_modules"].as_array().unwrap() {
        let prefix = format!("T_{}: pdim {},", t["vertex"].as_str().unwrap(), human(&t["pdim"]));
        assert!(text.contains(&prefix), "missing {prefix}");
    }
}

#[test]
fn human_and_json_agree_on_dimensions() {
    let q = fixture("fifteen.tqa");
    let cases: Vec<(Vec<&str>, &str)> = vec![
        (vec!["pdim", "path", "a9*a8*b7", &q], "pdim"),
        (vec!["pdim", "path", "a7", &q], "pdim"),
        (vec!["pdim", "simple", "3", &q], "pdim"),
    ];
    for (args, field) in cases {
        let v = json(&args);
        let text = tpa(&args).stdout;
        assert!(text.contains(&format!("= {}", human(&v["result"][field]))), "{args:?}: {text}");
    }
    let seq = fixture("pe1.seq");
    let v = json(&["spectrum", &q, &seq]);
    let text = tpa(&["spectrum", &q, &seq]).stdout;
    let set: Vec<String> = v["result"]["full_set"].as_array().unwrap().iter().map(human).collect();
    assert!(text.contains(&format!("spectrum = {{{}}}", set.join(", "))));
}

#[test]
fn cyclic_ideal_through_the_cli() {
    let v = json(&["pdim", "path", "a9*a8*b7", &fixture("fifteen.tqa")]);
    assert_eq!(v["result"]["pdim"], 3);
    let v = json(&["--left-to-right", "pdim", "path", "b7*a8*a9", &fixture("fifteen.tqa")]);
    assert_eq!(v["result"]["pdim"], 3);
}

#[test]
fn spectrum_of_the_projective_at_one() {
    let v = json(&["spectrum", &fixture("fifteen.tqa"), &fixture("pe1.seq")]);
    assert_eq!(v["result"]["full_set"], serde_json::json!([0, 2, 3, 4, "inf"]));
}

#[test]
fn oracle_agrees_on_the_quotient_by_b7() {
    let v = json(&["oracle", &fixture("fifteen.tqa"), &fixture("e7_mod_b7.mod")]);
    assert_eq!(v["result"]["formula"], 4);
    assert_eq!(v["result"]["oracle"], serde_json::json!({"kind": "exact", "value": 4}));
    assert_eq!(v["result"]["agrees"], true);
}

#[test]
fn oracle_reports_lower_bound_for_infinite_dimension() {
    let out = tpa(&["--json", "oracle", &fixture("fifteen.tqa"), &fixture("simple8.mod"), "--max-depth", "3"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(v["result"]["formula"], 3);

    let q = fixture("fifteen.tqa");
    let m = fixture("five_slots.mod");
    let out = tpa(&["--json", "oracle", &q, &m, "--max-depth", "5"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(out.code, EXIT_OK);
    assert_eq!(v["result"]["formula"], "inf");
    assert_eq!(v["result"]["oracle"], serde_json::json!({"kind": "at_least", "value": 5}));
}

#[test]
fn too_shallow_oracle_is_a_mismatch() {
    // pdim 4 needs more than two syzygies to certify.
    let out = tpa(&["oracle", &fixture("fifteen.tqa"), &fixture("e7_mod_b7.mod"), "--max-depth", "2"]);
    assert_eq!(out.code, EXIT_MISMATCH);
    assert!(out.stdout.contains("MISMATCH"));
}

#[test]
fn syzygy_lists_critical_generators() {
    let v = json(&["syzygy", &fixture("fifteen.tqa"), &fixture("five_slots.mod")]);
    let gens: Vec<&str> = v["result"]["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["path"].as_str().unwrap())
        .collect();
    for g in ["b3", "a4*a3", "a3*b4*a3", "a5", "b5", "a6", "b6", "a2"] {
        assert!(gens.contains(&g), "{g} missing from {gens:?}");
    }
    assert_eq!(v["result"]["steps"].as_array().unwrap().len(), 1);
}

#[test]
fn graph_emits_dot() {
    let out = tpa(&["graph", &fixture("fifteen.tqa"), &fixture("e7_mod_b7.mod"), "--dot", "--critical"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("digraph"));
    assert!(out.stdout.contains("style=dashed"));
    let plain = tpa(&["graph", &fixture("fifteen.tqa"), &fixture("e7_mod_b7.mod"), "--dot"]);
    assert!(!plain.stdout.contains("dashed"));
}

#[test]
fn unrealizable_sequence_is_reported() {
    let q = scratch("line.tqa", "name line\nL = 2\nvertices 1 2\na: 1 -> 2\n");
    // Two copies of vertex 2 on the radical cannot hang under a single top at 1.
    let s = scratch("line.seq", "1 0\n0 2\n0 0\n");
    let v = json(&["generic", &q, &s]);
    assert_eq!(v["result"]["realizable"], false);
    assert_eq!(v["result"]["generic_pdim"], Value::Null);
    let s = scratch("line_ok.seq", "1 0\n0 1\n0 0\n");
    let v = json(&["generic", &q, &s]);
    assert_eq!(v["result"]["realizable"], true);
    assert_eq!(v["result"]["generic_pdim"], 0);
}

#[test]
fn spectrum_check_on_a_small_algebra() {
    let q = scratch("loop.tqa", "name loop\nL = 2\nvertices 1 2\nx: 1 -> 1\ny: 1 -> 2\n");
    let s = scratch("loop.seq", "1 0\n1 1\n1 1\n");
    let out = tpa(&["spectrum-check", &q, &s]);
    assert_eq!(out.code, EXIT_OK, "{}{}", out.stdout, out.stderr);
    assert!(out.stdout.contains("agree"));
}

#[test]
fn exit_codes_for_bad_input() {
    let q = fixture("fifteen.tqa");
    assert_eq!(tpa(&["analyze", "/nonexistent.tqa"]).code, EXIT_INPUT);
    assert_eq!(tpa(&["pdim", "path", "a9*zz", &q]).code, EXIT_INPUT);
    assert_eq!(tpa(&["pdim", "simple", "99", &q]).code, EXIT_INPUT);
    assert_eq!(tpa(&["frobnicate"]).code, EXIT_INPUT);
    assert_eq!(tpa(&["--help"]).code, EXIT_OK);

    let broken = scratch("broken.tqa", "name b\nL = 0\na: 1 -> 2\n");
    let out = tpa(&["analyze", &broken]);
    assert_eq!(out.code, EXIT_INPUT);
    assert!(out.stderr.contains("2:"), "{}", out.stderr);

    let bad_seq = scratch("bad.seq", "1 2\n");
    assert_eq!(tpa(&["spectrum", &q, &bad_seq]).code, EXIT_INPUT);
}
