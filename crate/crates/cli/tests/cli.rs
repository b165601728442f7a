use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_paperfold"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_owned()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).expect("valid JSON")
}

#[test]
fn prefix_text() {
    let out = run(&["prefix", "-n", "8"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "11011001");
    assert_eq!(stdout(&run(&["prefix", "--seq", "periodic:0", "-n", "3"])), "001");
}

#[test]
fn delta_text_and_scan() {
    assert_eq!(stdout(&run(&["delta", "-s", "6", "-d", "33", "-m", "4"])), "1 1 1 1");
    let v = json(&["delta", "-s", "6", "-d", "17", "-m", "4", "--scan", "--json"]);
    assert_eq!(v["delta"], serde_json::json!([1, 1, 2, 0]));
    assert_eq!(v["agree"], true);
}

#[test]
fn verify_exit_codes() {
    let bad = run(&["verify", "-s", "6", "-d", "17", "-m", "4"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).starts_with("not an abelian power"));
    let good = run(&["verify", "-s", "62", "-d", "5", "-m", "4"]);
    assert_eq!(good.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["prefix", "--seq", "bogus", "-n", "3"][..],
        &["prefix", "--seq", "periodic:", "-n", "3"],
        &["delta", "-s", "6", "-d", "0", "-m", "4"],
        &["delta", "-s", "6", "-d", "1", "-m", "0"],
        &["verify", "-s", "4294967296", "-d", "1", "-m", "1"],
        &["construct"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn construct_round_trips_through_verify() {
    let w = json(&["construct", "-m", "4", "--json"]);
    assert_eq!(w["s"], "9045916");
    assert_eq!(w["d"], "532610");
    assert_eq!(w["trace"].as_array().unwrap().len(), 3);
    let (s, d) = (w["s"].as_str().unwrap(), w["d"].as_str().unwrap());
    let v = json(&["verify", "-s", s, "-d", d, "-m", "4", "--json"]);
    assert_eq!(v["abelian_power"], true);
    assert_eq!(v["counts"], serde_json::json!([266304, 266304, 266304, 266304]));

    let w = json(&["construct", "--seq", "preperiod:0,period:01", "-m", "2", "--json"]);
    let v = json(&[
        "verify",
        "--seq",
        "preperiod:0,period:01",
        "-s",
        w["s"].as_str().unwrap(),
        "-d",
        w["d"].as_str().unwrap(),
        "-m",
        "2",
        "--json",
    ]);
    assert_eq!(v["abelian_power"], true);
}

#[test]
fn search_reports_minimal_or_none() {
    assert_eq!(
        stdout(&run(&["search", "-m", "4", "--smax", "10", "--dmax", "3"])),
        "none"
    );
    let v = json(&["search", "-m", "4", "--smax", "100", "--dmax", "8", "--json"]);
    assert_eq!(v["witness"]["s"], "62");
    assert_eq!(v["witness"]["d"], "5");
}

#[test]
fn prefix_and_ltable_json() {
    let v = json(&["prefix", "-n", "8", "--json"]);
    assert_eq!(v["letters"], serde_json::json!([1, 1, -1, 1, 1, -1, -1, 1]));
    assert_eq!(v["seq"], "regular");
    let rows = json(&["ltable", "--json"]);
    let ells: Vec<u64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["ell"].as_u64().unwrap())
        .collect();
    assert_eq!(ells, [7, 1, 3, 5, 7, 9, 11, 5, 23, 1, 3, 21, 23, 9, 11, 21]);
    assert_eq!(stdout(&run(&["ltable"])).lines().count(), 17);
}
