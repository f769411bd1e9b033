use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn problem(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../problems");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn ordef(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordef")).args(args).output().expect("binary runs")
}

fn ordef_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ordef"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn drinfeld_file_gives_one() {
    let out = ordef(&["dim", "algebraic", &problem("drinfeld_q5_d2.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["results"]["hull_dim"], 1);
    assert_eq!(doc["results"]["delta"], 3);
    assert_eq!(doc["results"]["points"].as_array().unwrap().len(), 2);
    assert!(doc["results"]["exceptional_case"].is_null());
}

#[test]
fn unramified_genus_two_gives_three() {
    let out = ordef_stdin(&["dim", "algebraic", "-"], r#"{"p": 7, "g_Y": 2, "branch": []}"#);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["results"]["hull_dim"], 3);
}

#[test]
fn artin_schreier_reports_genus() {
    let out = ordef(&["dim", "algebraic", &problem("artin_schreier_q5.json")]);
    let doc = json(&out);
    assert_eq!(doc["results"]["hull_dim"], 1);
    assert_eq!(doc["results"]["genus_x"], 16);
}

#[test]
fn branch_order_divisible_by_p_is_a_domain_error() {
    let out = ordef_stdin(&["dim", "algebraic", "-"], r#"{"p": 5, "g_Y": 0, "branch": [{"t": 0, "n": 10}]}"#);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
}

#[test]
fn schema_violations_exit_two() {
    for bad in [
        r#"{"p": 5, "branch": []}"#,
        r#"{"p": 5, "g_Y": 0, "branch": [], "colour": "red"}"#,
        r#"{"kind": "analytic", "schema_version": 1, "payload": {"p": 5, "vertices": []}}"#,
        "not json",
    ] {
        let out = ordef_stdin(&["dim", "algebraic", "-"], bad);
        assert_eq!(out.status.code(), Some(2), "{bad}");
    }
    let missing = ordef(&["dim", "algebraic", "/nonexistent/problem.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn artin_schreier_mumford_graph_gives_one() {
    let out = ordef(&["dim", "analytic", &problem("asm_graph_q5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["results"]["hull_dim"], 1);
    assert_eq!(doc["results"]["cyclomatic"], 0);
    assert_eq!(doc["results"]["vertices"][0]["h"], 3);
    assert_eq!(doc["results"]["edges"][0]["t"], 2);
}

#[test]
fn rose_of_trivial_groups_gives_three() {
    let out = ordef(&["dim", "analytic", &problem("rose_g2.json")]);
    assert_eq!(json(&out)["results"]["hull_dim"], 3);
}

#[test]
fn lagrange_violation_is_only_a_warning() {
    let input = r#"{"p": 5, "vertices": [{"kind": "cyclic", "n": 3}, {"kind": "cyclic", "n": 4}],
                    "edges": [[0, 1, {"kind": "cyclic", "n": 2}]]}"#;
    let out = ordef_stdin(&["dim", "analytic", "-"], input);
    assert_eq!(out.status.code(), Some(0));
    let warnings = json(&out)["warnings"].as_array().unwrap().clone();
    assert!(warnings.iter().any(|w| w.as_str().unwrap().contains("does not divide")));
}

#[test]
fn disconnected_graph_exits_three() {
    let input = r#"{"p": 5, "vertices": [{"kind": "trivial"}, {"kind": "trivial"}], "edges": []}"#;
    assert_eq!(ordef_stdin(&["dim", "analytic", "-"], input).status.code(), Some(3));
}

#[test]
fn consistency_file_passes() {
    let out = ordef(&["consistency", &problem("drinfeld_pair_q9_d3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["results"]["algebraic"]["hull_dim"], 2);
}

#[test]
fn inconsistent_pair_exits_one() {
    let input = r#"{"algebraic": {"p": 5, "g_Y": 3, "branch": []},
                    "analytic": {"p": 5, "vertices": [{"kind": "trivial"}],
                                 "edges": [[0, 0, {"kind": "trivial"}], [0, 0, {"kind": "trivial"}]]}}"#;
    let out = ordef_stdin(&["consistency", "-"], input);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn cohomology_command() {
    let out = ordef(&["cohomology", "--p", "7", "--t", "1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    assert_eq!(doc["results"]["dim_h1"], 1);
    assert_eq!(doc["results"]["closed_form"], 1);
    assert_eq!(ordef(&["cohomology", "--p", "5", "--t", "1", "--n", "3"]).status.code(), Some(3));
    assert_eq!(ordef(&["cohomology", "--p", "6", "--t", "1"]).status.code(), Some(3));
}

#[test]
fn output_is_byte_reproducible() {
    let a = ordef(&["dim", "analytic", &problem("asm_graph_q5.json")]);
    let b = ordef(&["dim", "analytic", &problem("asm_graph_q5.json")]);
    assert_eq!(a.stdout, b.stdout);
    let a = ordef(&["verify", "--suite", "bridge", "--p", "5"]);
    let b = ordef(&["verify", "--suite", "bridge", "--p", "5"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_filters_by_suite_and_prime() {
    let out = ordef(&["verify", "--suite", "cohomology", "--p", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = json(&out);
    let suites = doc["results"]["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 1);
    assert_eq!(suites[0]["suite"], "cohomology-table");
    let cases = suites[0]["cases"].as_array().unwrap();
    assert!(!cases.is_empty());
    assert!(cases.iter().all(|c| c["case"].as_str().unwrap().starts_with("p=7 ")));
}

#[test]
fn passing_suites_exit_zero() {
    let out = ordef(&["verify", "--suite", "hull", "--suite", "dual-lift", "--suite", "theorem"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn weakened_nilpotence_fails_hull_suite() {
    let out = ordef(&["verify", "--suite", "hull", "--disable-nilpotence"]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["first_failure"]["suite"], "hull-lifts");
    assert_eq!(doc["first_failure"]["case"], "p=5 t=1 n=1");
}

#[test]
fn failing_suite_names_first_case() {
    let out = ordef(&["verify", "--suite", "bridge", "--p", "3"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["first_failure"]["case"], "p=3 A_5");
    assert!(String::from_utf8_lossy(&out.stderr).contains("p=3 A_5"));
}

#[test]
fn unknown_suite_is_a_usage_error() {
    assert_eq!(ordef(&["verify", "--suite", "everything"]).status.code(), Some(2));
}

#[test]
fn pretty_rendering() {
    let out = ordef(&["--pretty", "verify", "--suite", "hull"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("hull-lifts") && text.contains("PASS"));
    let out = ordef(&["dim", "algebraic", &problem("drinfeld_q5_d2.json"), "--pretty"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("hull_dim             1"));
}
