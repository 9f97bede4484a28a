use std::path::PathBuf;
use std::process::{Command, Output};

use hurwitz_tnn::harness::{verify_forward, ScenarioConfig};
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz-tnn"))
        .args(args)
        .env_remove("TNN_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn coeffs_of_polynomial() {
    let out = run(&["coeffs", "--spec", r#"{"zeros_pos":["1","2"]}"#, "--lo", "-1", "--hi", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["coeffs"], serde_json::json!(["0", "1", "3/2", "1/2", "0"]));
}

#[test]
fn interlaced_fixture_is_tnn() {
    let out = run(&[
        "check-tnn",
        "--p",
        &fixture("interlaced_p.json"),
        "--q",
        &fixture("interlaced_q.json"),
        "--size",
        "6",
        "--max-order",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "all_nonnegative");
}

#[test]
fn swapped_fixture_has_witness() {
    let out = run(&[
        "check-tnn",
        "--p",
        &fixture("swapped_p.json"),
        "--q",
        &fixture("swapped_q.json"),
        "--size",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let w = &json(&out)["witness"];
    assert_eq!(w["value"], "-1/2");
    assert_eq!(w["rows"], serde_json::json!([1, 2]));
    assert_eq!(w["cols"], serde_json::json!([1, 2]));
}

#[test]
fn max_order_from_environment() {
    let args = ["check-tnn", "--matrix", &fixture("section_whitney.json")];
    let out = Command::new(env!("CARGO_BIN_EXE_hurwitz-tnn"))
        .args(args)
        .env("TNN_MAX_ORDER", "1")
        .output()
        .unwrap();
    assert_eq!(json(&out)["max_order"], 1);
}

#[test]
fn fixtures_round_trip() {
    for (args, code) in [
        (vec!["coeffs", "--spec", "edrei_right_tail.json", "--lo", "-2", "--hi", "6"], 0),
        (vec!["check-interlace", "--spec", "sfunc_meromorphic.json"], 0),
        (vec!["check-interlace", "--spec", "sfunc_doubly_infinite.json"], 0),
        (vec!["pf", "--spec", "sfunc_meromorphic.json"], 0),
        (vec!["pf", "--spec", "sfunc_affine.json", "--reciprocal"], 0),
        (vec!["check-tnn", "--kind", "toeplitz", "--p", "window_geometric.json", "--size", "4"], 0),
        (vec!["transform", "--op", "whitney", "--matrix", "section_whitney.json", "--j", "2"], 0),
        (vec!["verify", "--direction", "forward", "--trials", "3", "--section-size", "6", "--max-order", "2"], 0),
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| if a.ends_with(".json") { fixture(a) } else { a.to_string() })
            .collect();
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = run(&argv);
        assert_eq!(a.status.code(), Some(code), "{argv:?}: {}", String::from_utf8_lossy(&a.stdout));
        // output parses, re-serializes to the same text, and repeats exactly
        let text = String::from_utf8(a.stdout.clone()).unwrap();
        let again = serde_json::to_string_pretty(&json(&a)).unwrap() + "\n";
        assert_eq!(text, again, "{argv:?}");
        assert_eq!(run(&argv).stdout, a.stdout, "{argv:?}");
    }
}

#[test]
fn scenario_fixture_matches_flags() {
    let text = std::fs::read_to_string(fixture("scenario.json")).unwrap();
    let cfg: ScenarioConfig = serde_json::from_str(&text).unwrap();
    cfg.validate().unwrap();
    let lib = serde_json::to_value(verify_forward(&cfg)).unwrap();
    let out = run(&[
        "verify",
        "--direction",
        "forward",
        "--seed",
        &cfg.seed.to_string(),
        "--trials",
        &cfg.trials.to_string(),
        "--section-size",
        &cfg.section_size.to_string(),
        "--max-order",
        &cfg.max_minor_order.to_string(),
        "--n-zeros",
        &cfg.n_zeros.to_string(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), lib);
}

#[test]
fn errors_are_json() {
    let out = run(&["coeffs", "--spec", "{not json", "--lo", "0", "--hi", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(json(&out)["error"]["kind"].is_string());
    let out = run(&["check-tnn", "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "usage");
}
