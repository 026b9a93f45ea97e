use std::path::PathBuf;
use std::process::{Command, Output};

fn ratcont(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratcont")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let o = ratcont(&full);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).unwrap())
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ratcont-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn limit_and_both_sides() {
    let o = ratcont(&["limit", "--f", "y/x", "--curve", "x=t, y=1", "--side", "both"]);
    assert_eq!(stdout(&o).trim(), "+inf (t -> 0+), -inf (t -> 0-)");
    let (code, v) = json(&["limit", "--f", "y/x", "--curve", "x=t, y=1", "--valuation"]);
    assert_eq!(code, 0);
    assert_eq!(v["limit"]["kind"], "infinity");
}

#[test]
fn groebner_commands() {
    let o = ratcont(&[
        "gb",
        "--ideal",
        "x^2 + y^2 - 1, x - y",
        "--order",
        "lex",
        "--vars",
        "x,y",
    ]);
    assert_eq!(stdout(&o), "x - y\ny^2 - 1/2\n");
    let (code, v) = json(&["nf", "--expr", "x^2 + y", "--ideal", "x^2 + y^2 - 1, x"]);
    assert_eq!((code, v["normal_form"].as_str()), (0, Some("y")));
    assert!(ratcont(&["member", "--expr", "x*y", "--ideal", "x"]).status.success());
}

#[test]
fn restrict_to_variety() {
    let (code, v) = json(&["restrict", "--f", "x/(y + 1)", "--ideal", "y"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["text"], "x");
}

#[test]
fn extend_from_problem_file() {
    let path = temp_file(
        "line.problem",
        "[variety]\ny\n[rep]\npoint: x=0, y=0\np: x\nq: 1\n[samples]\nx=1, y=1\n",
    );
    let (code, v) = json(&["extend", "--problem", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verdicts"]["regularity"]["route"]["kind"], "unit_ideal");
    let bad = temp_file("bad.problem", "[variety]\ny\n[rep]\npoint: x=0, y=1\np: x\nq: 1\n");
    assert_eq!(
        ratcont(&["extend", "--problem", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn certificates() {
    let path = temp_file(
        "half.cert",
        "target: 2*(x1^2 + u*x1*x2 + u^2*x2^2) - (x1^2 + x2^2)\nsquare: 1 : x1 + u*x2\nside: u^2 - 1 : x2^2 : u^2 >= 1\n",
    );
    let (code, v) = json(&[
        "certify",
        "--cert",
        path.to_str().unwrap(),
        "--radical",
        "u^3 = 1 + x3^2",
    ]);
    assert_eq!((code, &v["verified"]), (0, &serde_json::Value::Bool(true)));
    let wrong = temp_file("wrong.cert", "target: x^2 + y^2\nsquare: 1 : x + y\n");
    assert_eq!(
        ratcont(&["certify", "--cert", wrong.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn scenarios_and_exit_codes() {
    let o = ratcont(&["verify-example", "--list"]);
    assert_eq!(stdout(&o).lines().count(), 5);
    for id in ["EX1", "EX2", "EX3", "EX4", "EX5"] {
        assert!(ratcont(&["verify-example", id]).status.success(), "{id}");
        assert_eq!(
            ratcont(&["verify-example", id, "--mutated"]).status.code(),
            Some(1),
            "{id}"
        );
    }
    assert_eq!(ratcont(&["verify-example", "EX6"]).status.code(), Some(2));
    assert_eq!(
        ratcont(&["limit", "--f", "x^", "--curve", "x=t"]).status.code(),
        Some(2)
    );
    assert_eq!(ratcont(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn padic_evaluation() {
    let (code, v) = json(&["padic-eval", "--f", "1/x", "--point", "x=25", "--padic", "5:6"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"]["valuation"], -2);
    let (code, v) = json(&["padic-eval", "--f", "1/(x - 1)", "--point", "x=1", "--padic", "3:4"]);
    assert_eq!((code, &v["undefined"]), (1, &serde_json::Value::Bool(true)));
}
