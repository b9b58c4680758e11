use std::process::{Command, Output};

use mzv_core::identities::IdentityReport;

fn mzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_examples() {
    let o = mzv(&["eval", "mzv", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1.2020569"), "{}", stdout(&o));
    assert!(stderr(&o).contains("prec-bits=128 trunc=100000 tail-order=6"));
    let o = mzv(&["eval", "zeta", "2"]);
    assert!(stdout(&o).contains("1.6449340"));
    let o = mzv(&["eval", "mzsv", "2,2", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["value"].as_str().unwrap().starts_with("1.894065"));
    assert!(v["bound"].as_f64().unwrap() < 1e-20);
}

#[test]
fn domain_and_usage_errors_exit_2() {
    let o = mzv(&["eval", "mzv", "2,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("non-admissible index"));
    for args in [
        &["eval", "mzv", "1,x"][..],
        &["eval", "nope", "2"],
        &["eval"],
        &["verify", "unknown-identity"],
        &["verify", "corollary1", "--r", "2"],
        &["reg", "harm", "1,2", "--prec-bits", "10"],
        &["table", "example1", "--k", "1"],
        &["frobnicate"],
    ] {
        assert_eq!(mzv(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn reg_examples() {
    let o = mzv(&["reg", "star-sh", "2,1"]);
    assert!(stdout(&o).starts_with("ζ(2)·T − ζ(1,2)\n"), "{}", stdout(&o));
    let o = mzv(&["reg", "harm", "1"]);
    assert!(stdout(&o).starts_with("T\n"));
    let o = mzv(&["reg", "shuffle", "2,1"]);
    assert!(stdout(&o).starts_with("ζ(2)·T − 2ζ(1,2)\n"));
    let o = mzv(&["reg", "shuffle", "2,1", "--route", "rho", "--json"]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    // the ρ route leaves ζ(1,2) and ζ(3) as separate symbols
    assert_eq!(v["symbolic"], "ζ(2)·T − ζ(1,2) − ζ(3)");
    let word = mzv(&["reg", "shuffle", "2,1", "--json"]);
    let w: serde_json::Value = serde_json::from_str(stdout(&word).trim()).unwrap();
    let c0 = |x: &serde_json::Value| x["coefficients"][0]["value"].as_str().unwrap()[..30].to_string();
    assert_eq!(c0(&v), c0(&w));
}

#[test]
fn verify_pass_and_fail_exit_codes() {
    let o = mzv(&["verify", "theorem1", "--index", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS theorem1"));
    let o = mzv(&["verify", "remark-bell", "--r", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exact"));
    // bounds cannot reach this tolerance, so the check must fail
    let o = mzv(&["verify", "remark-star", "--r", "3", "--tol", "1e-60"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL"));
    // the configured series order is too small for the degree
    let o = mzv(&["verify", "prop3-1", "--r", "4", "--series-order", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("series order"));
}

#[test]
fn json_reports_round_trip() {
    for args in [
        &["verify", "corollary1", "--k", "3", "--r", "2", "--json"][..],
        &["verify", "prop1", "--r", "4", "--b", "3,4", "--json"],
        &["verify", "theorem1", "--index", "1,1,2", "--json"],
    ] {
        let o = mzv(args);
        let line = stdout(&o);
        let line = line.trim_end();
        let report = IdentityReport::from_json(line).unwrap();
        assert!(report.pass);
        assert_eq!(report.to_json(), line);
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["identity", "params", "max_deviation", "bound", "pass"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn table_and_combinatorics() {
    let o = mzv(&["table", "example1", "--k", "2", "--l", "2", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("PASS").count(), 3);
    let o = mzv(&["table", "--k", "2,3", "--l", "2", "--json"]);
    assert_eq!(stdout(&o).lines().count(), 6);

    let o = mzv(&["bell", "4", "2"]);
    assert_eq!(stdout(&o).trim(), "B_{4,2} = 4*x1*x3 + 3*x2^2");
    let o = mzv(&["partitions", "4", "--count"]);
    assert_eq!(stdout(&o).trim(), "15");
    let o = mzv(&["partitions", "3", "--b", "3"]);
    assert_eq!(stdout(&o).lines().count(), 3);
    let o = mzv(&["bell", "5", "--stirling", "--json"]);
    let last: serde_json::Value = serde_json::from_str(stdout(&o).lines().last().unwrap()).unwrap();
    assert_eq!(last["second"][2], "15");
    assert_eq!(last["first_unsigned"][2], "50");
    let o = mzv(&["verify", "--list"]);
    assert_eq!(stdout(&o).lines().count(), 19);
}

#[test]
fn cache_warm_start() {
    let dir = std::env::temp_dir().join(format!("mzv-cli-cache-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cache.json");
    let p = path.to_str().unwrap();
    let cold = mzv(&["eval", "mzv", "1,3", "--cache", p]);
    assert_eq!(cold.status.code(), Some(0));
    assert!(path.exists());
    let warm = mzv(&["eval", "mzv", "1,3", "--cache", p]);
    let value = |o: &Output| stdout(o).lines().next().unwrap().to_string();
    assert_eq!(value(&cold), value(&warm));
    // a cache written under another configuration is rejected
    let other = mzv(&["eval", "mzv", "1,3", "--cache", p, "--trunc", "5000"]);
    assert_eq!(other.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn suite_passes_at_defaults() {
    let o = mzv(&["suite"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("criterion 11"));
}
