use std::process::{Command, Output};

use serde_json::Value;

fn pierced(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pierced"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

const TWO_STEP: &str = "[[],[1],[1,2],[2],[1,2,3],[1,3]]";

#[test]
fn analyze_reports_everything() {
    let out = pierced(&["analyze", "--code", TWO_STEP]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["cf_max_degree"], 2);
    assert_eq!(v["intersection_complete"], true);
    assert_eq!(v["clique_complex"], true);
    assert_eq!(v["shelling"]["verified"], true);
    assert_eq!(v["piercing"]["status"], "pierced");
    assert_eq!(v["piercing"]["sequence"]["steps"].as_array().unwrap().len(), 2);
}

#[test]
fn toric_gb_of_the_square() {
    let v = json(&pierced(&["toric-gb", "--code", "[[],[1],[2],[1,2]]"]));
    assert_eq!(v["basis"], serde_json::json!(["y_{1}*y_{2} - y_{12}"]));
    assert_eq!(v["certified"], true);
}

#[test]
fn detection() {
    let out = pierced(&["detect", "--code", "[[],[1],[2]]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "pierced");
    let out = pierced(&["detect", "--code", "[[],[1],[2],[3],[1,2,3]]"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "not_pierced");
}

#[test]
fn pierce_one_step() {
    let v = json(&pierced(&[
        "pierce",
        "--code",
        "[[],[1],[1,2],[2]]",
        "--lambda",
        "2",
        "--sigma",
        "1",
    ]));
    let words = v["code"]["codewords"].as_array().unwrap().len();
    assert_eq!(words, 6);
}

#[test]
fn exit_codes() {
    assert_eq!(pierced(&["analyze", "--code", "[[0]]"]).status.code(), Some(1));
    assert_eq!(pierced(&["analyze", "--code", "not json"]).status.code(), Some(1));
    assert_eq!(pierced(&["analyze"]).status.code(), Some(1));
    // nesting along a sequence needs the code to be pierced
    assert_eq!(
        pierced(&["nesting", "--code", "[[],[1],[2],[3],[1,2,3]]"])
            .status
            .code(),
        Some(2)
    );
    let out = pierced(&[
        "toric-gb",
        "--code",
        "[[],[1],[1,2],[2],[1,2,3],[1,3],[2,3],[3]]",
        "--max-pairs",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "resource_limit");
}

#[test]
fn realizations_from_the_command_line() {
    let out = pierced(&["realize", "--code", TWO_STEP, "--mode", "hyperplane"]);
    assert_eq!(out.status.code(), Some(0));
    let out = pierced(&["realize", "--code", TWO_STEP, "--mode", "ball", "--samples", "20000"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_byte_identical() {
    for args in [
        &["analyze", "--code", TWO_STEP][..],
        &["scan-conjecture", "--max-n", "3", "--max-k", "2"],
        &[
            "realize",
            "--code",
            TWO_STEP,
            "--mode",
            "ball",
            "--samples",
            "5000",
            "--seed",
            "7",
        ],
        &["counterexample"],
    ] {
        let (a, b) = (pierced(args), pierced(args));
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
