use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derham-factor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (serde_json::Value, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (v, out.status.code().unwrap())
}

#[test]
fn count_reports_irreducibility() {
    let (v, code) = json(&["count", "x^2 - z*y^2"]);
    assert_eq!(code, 0);
    assert_eq!(v["count"], 1);
    assert_eq!(v["irreducible"], true);
    assert_eq!(v["ms"], serde_json::Value::Null);
}

#[test]
fn factor_lists_factors_and_eigenvalues() {
    let (v, code) = json(&["factor", "x^2 - y^2", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["factors"], serde_json::json!(["x - y", "x + y"]));
    assert_eq!(v["residual"], "1");
    assert_eq!(v["certificate"], true);
    assert_eq!(v["seed"], 3);
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 2);
}

#[test]
fn partial_split_exits_with_four() {
    let (v, code) = json(&["factor", "x^2 + y^2"]);
    assert_eq!(code, 4);
    assert_eq!(v["count"], 2);
    assert_eq!(v["residual"], "x^2 + y^2");
}

#[test]
fn parse_error_exits_with_two() {
    let out = run(&["count", "x^^2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn repeated_factor_exits_with_three_and_names_it() {
    let (v, code) = json(&["count", "(a + b)^2*(a - b)"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], "not_reduced");
    assert_eq!(v["error"]["witness"], "a + b");
}

#[test]
fn zero_retries_still_tries_once() {
    let (v, code) = json(&["factor", "x*y - x", "--retries", "0"]);
    assert_eq!(code, 0);
    assert_eq!(v["factors"].as_array().unwrap().len(), 2);
}

#[test]
fn explicit_variable_order() {
    let (v, _) = json(&["generic", "x^2*y^2*z^2 + x", "--vars", "y,x,z"]);
    assert_eq!(v["vars"], serde_json::json!(["y", "x", "z"]));
    assert_eq!(v["generic"]["variable"], "y");
    assert_eq!(v["generic"]["is_generic"], false);
    let (v, _) = json(&["generic", "x^2*y^2*z^2 + x", "--var", "x"]);
    assert_eq!(v["generic"]["is_generic"], true);
    assert_eq!(v["generic"]["witness_kind"], "unit");
}

#[test]
fn sections_with_explicit_planes() {
    let (v, code) = json(&[
        "section",
        "x^2 - z*y^2",
        "--vars",
        "x,y,z",
        "--plane",
        "0,0,1;1,0,0;0,1,0",
    ]);
    assert_eq!(code, 0);
    let plane = &v["section"]["planes"][0];
    assert_eq!(plane["section"], "s^2 - t^2");
    assert_eq!(plane["count"], 2);
    assert_eq!(v["section"]["mismatches"], 1);
}

#[test]
fn random_sections_are_seeded() {
    let args = [
        "section",
        "x^2*y - x - z",
        "--random-planes",
        "5",
        "--seed",
        "11",
        "--format",
        "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let (v, _) = json(&args[..6]);
    assert_eq!(v["section"]["planes"].as_array().unwrap().len(), 5);
}

#[test]
fn timing_fills_ms() {
    let (v, _) = json(&["count", "x*y - 1", "--timing"]);
    assert!(v["ms"].is_u64());
}

#[test]
fn text_output_is_line_oriented() {
    let out = run(&["count", "x*y - 1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "count: 1"), "{text}");
}
