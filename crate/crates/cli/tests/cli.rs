use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hedonic"))
        .args(args)
        .env_remove("COALITION_ORACLE_CEILING")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn temp_file(name: &str, text: &str) -> String {
    let path = std::env::temp_dir().join(format!("hedonic-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn solve_brute_on_fig1() {
    let out = run(&["solve", "--method", "brute", &fixture("fig1.json")]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["product"], "81");
    assert_eq!(
        v["partition"]["coalitions"],
        serde_json::json!([[0, 1, 3, 4], [2, 5]])
    );
    assert_eq!(v["method"], "brute");
}

#[test]
fn stability_witness_on_fig3() {
    let out = run(&[
        "stability",
        "--notion",
        "is",
        &fixture("fig3.json"),
        &fixture("fig3_opt.json"),
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["stable"], false);
    assert_eq!(v["witness_deviation"]["agent"], 1);
    assert_eq!(
        v["witness_deviation"]["target_members"],
        serde_json::json!([0, 2])
    );
    let out = run(&[
        "stability",
        "--notion",
        "cns",
        &fixture("fig3.json"),
        &fixture("fig3_opt.json"),
    ]);
    assert_eq!(json(&out)["stable"], true);
}

#[test]
fn malformed_input_exits_two() {
    let bad = temp_file("bad.json", "{ not json");
    let out = run(&["solve", "--method", "brute", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"]["code"].is_string());
    assert!(!out.stderr.is_empty());
    let out = run(&["solve", "--method", "brute", "/nonexistent/instance.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let c5 = temp_file(
        "c5.json",
        r#"{"n": 5, "class": "aeg", "edges": [[0,1],[1,2],[2,3],[3,4],[0,4]]}"#,
    );
    let out = run(&["solve", "--method", "two-coalitions", &c5]);
    assert_eq!(out.status.code(), Some(1));
    assert!(json(&out)["error"]["message"].is_string());
    let out = run(&["solve", "--method", "afg-alg1", &fixture("fig1.json")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn oracle_ceiling_is_enforced() {
    let out = run(&[
        "--oracle-ceiling",
        "4",
        "solve",
        "--method",
        "brute",
        &fixture("fig1.json"),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_hedonic"))
        .args(["solve", "--method", "brute", &fixture("fig1.json")])
        .env("COALITION_ORACLE_CEILING", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bench_with_no_instances() {
    let out = run(&["bench", "--n", "5", "--count", "0"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["rows"], serde_json::json!([]));
    assert_eq!(v["all_bounds_hold"], true);
}

#[test]
fn bench_csv_has_one_row_per_instance_and_method() {
    let out = run(&[
        "bench", "--family", "afg", "--n", "6", "--count", "3", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn gen_is_deterministic() {
    let a = run(&[
        "gen",
        "--class",
        "general",
        "--n",
        "6",
        "--seed",
        "11",
        "--asymmetric",
    ]);
    let b = run(&[
        "gen",
        "--class",
        "general",
        "--n",
        "6",
        "--seed",
        "11",
        "--asymmetric",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = run(&[
        "gen",
        "--class",
        "general",
        "--n",
        "6",
        "--seed",
        "12",
        "--asymmetric",
    ]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn pack_reports_factor() {
    let out = run(&["pack", &fixture("triangles_graph.json")]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["is_factor"], true);
    assert_eq!(v["covered"], 6);
}

#[test]
fn dynamics_reach_stable_partition() {
    let out = run(&[
        "dynamics",
        "--kind",
        "contractual-individual",
        &fixture("fig1.json"),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["step_limit_hit"], false);
    assert_eq!(
        v["steps"].as_u64().unwrap() as usize,
        v["trace"].as_array().unwrap().len()
    );
    assert_eq!(
        v["partition"]["coalitions"],
        serde_json::json!([[0, 1, 2], [3, 4, 5]])
    );
}

#[test]
fn reduce_two_sided_meets_target() {
    let out = run(&[
        "reduce",
        "--from",
        "two-sided",
        "--market",
        &fixture("two_sided_market.json"),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v["n"], 5);
    assert_eq!(v["provenance"]["reduction"], "two-sided");
}
