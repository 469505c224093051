// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::{Command, Output};

fn acdmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_acdmap"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON report")
}

#[test]
fn decompose_worked_example() {
    let o = acdmap(&["decompose", "--tt", "0x8804800184148111", "--vars", "6", "-K", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["luts"], 3);
    assert_eq!(r["mu"], 4);
    assert_eq!(r["fs"], serde_json::json!([0, 1]));
    assert_eq!(r["verified"], true);
    assert_eq!(r["bs_functions"].as_array().unwrap().len(), 2);
}

#[test]
fn decompose_parity_with_late_vars() {
    let o = acdmap(&["decompose", "--tt", "parity11", "--vars", "11", "-K", "6", "--late", "0,1,2,3,4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("mu           2"), "{out}");
    assert!(out.contains("verified     true"));
}

#[test]
fn decompose_random_wide_is_infeasible() {
    let o = acdmap(&["decompose", "--tt", "random", "--vars", "11", "-K", "6", "--late", "1,3,5,7,9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("feasible     no"));
}

#[test]
fn decompose_bad_input() {
    assert_eq!(acdmap(&["decompose", "--tt", "0x12", "--vars", "6"]).status.code(), Some(2));
    assert_eq!(acdmap(&["decompose", "--tt", "0x1g", "--vars", "3"]).status.code(), Some(2));
}

#[test]
fn map_bar_writes_blif() {
    let dir = std::env::temp_dir().join(format!("acdmap-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let blif = dir.join("bar.blif");
    let o = acdmap(&["map", &data("bar.aag"), "--verify", "--json", "-o", blif.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let r = json(&o);
    assert_eq!(r["depth"], 4);
    assert_eq!(r["arrival"], 4);
    assert_eq!(r["mismatches"], 0);
    let text = std::fs::read_to_string(&blif).unwrap();
    assert!(text.starts_with(".model"));
    assert_eq!(text.matches(".names").count() as u64, r["luts"].as_u64().unwrap() + extra_buffers(&text));
    std::fs::remove_dir_all(&dir).unwrap();
}

/// Buffers are `.names a b` followed by `1 1`.
fn extra_buffers(text: &str) -> u64 {
    let lines: Vec<&str> = text.lines().collect();
    lines
        .windows(2)
        .filter(|w| w[0].starts_with(".names") && w[0].split_whitespace().count() == 3 && w[1] == "1 1")
        .count() as u64
}

#[test]
fn map_wide_cuts_never_deepen() {
    for name in ["adder.aag", "max.aag"] {
        let d = |z: &str| json(&acdmap(&["map", &data(name), "-Z", z, "--json"]))["depth"].as_u64().unwrap();
        assert!(d("8") <= d("0"), "{name}");
    }
}

#[test]
fn map_reports_are_deterministic() {
    let a = acdmap(&["map", &data("adder.aag")]);
    let b = acdmap(&["map", &data("adder.aag")]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn map_malformed_input() {
    let dir = std::env::temp_dir().join(format!("acdmap-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.aag");
    std::fs::write(&bad, "aag 3 2 0 1 1\n2\n4\n6\n6 2 8\n").unwrap();
    let o = acdmap(&["map", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(acdmap(&["map", "/nonexistent.aag"]).status.code(), Some(2));
    assert_eq!(acdmap(&["map", &data("bar.aag"), "-Z", "5"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bench_random_and_harvest() {
    let o = acdmap(&["bench", "--vars", "8", "--samples", "50", "--json", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["functions"], 50);
    assert_eq!(r["verify_failures"], 0);
    assert!(r["success_rate"].as_f64().unwrap() >= 90.0);

    let source = format!("harvest:{}", data("adder.aag"));
    let o = acdmap(&["bench", "--source", &source, "--vars", "7", "--late", "1", "--samples", "30", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("harvested:"));

    let empty = acdmap(&["bench", "--samples", "0"]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(stdout(&empty).lines().count(), 1);

    assert_eq!(acdmap(&["bench", "--source", "harvest:/nonexistent.aag"]).status.code(), Some(2));
}

#[test]
fn bench_same_seed_same_bytes() {
    let args = ["bench", "--vars", "10", "--late", "3", "--samples", "60", "--seed", "9"];
    let a = acdmap(&args);
    let b = acdmap(&args);
    assert_eq!(a.stdout, b.stdout);
    let mut with_jobs = args.to_vec();
    with_jobs.extend(["--jobs", "2"]);
    assert_eq!(acdmap(&with_jobs).stdout, a.stdout);
}
