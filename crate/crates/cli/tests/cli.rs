use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Rational};
use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn mzv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mzv")).args(args).current_dir(root()).output().expect("mzv runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

/// JSON report with the timing field removed.
fn report(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = mzv(&full);
    let mut v: Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}\n{}", stdout(&o)));
    check_schema(&v);
    v.as_object_mut().unwrap().remove("elapsed_ms");
    (v, code(&o))
}

/// Compares with tests/golden/<name>; UPDATE_GOLDEN=1 rewrites the file.
fn golden(name: &str, actual: &str) {
    let path = root().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(actual, want, "golden {name} differs");
}

fn golden_json(name: &str, v: &Value) {
    golden(name, &(serde_json::to_string_pretty(v).unwrap() + "\n"));
}

fn is_str(v: &Value) -> bool {
    v.is_string()
}

/// The report schema documented in docs/json-report.md.
fn check_schema(v: &Value) {
    let o = v.as_object().expect("report is an object");
    let allowed = ["command", "precision", "results", "elapsed_ms", "summary", "error"];
    assert!(o.keys().all(|k| allowed.contains(&k.as_str())), "{v}");
    assert!(o["command"].as_array().unwrap().iter().all(is_str));
    let p = o["precision"].as_object().unwrap();
    assert!(p["bits"].is_u64());
    assert!(p["terms"].is_null() || p["terms"].is_u64());
    assert!(p["tol"].is_null() || p["tol"].is_f64());
    assert!(o["elapsed_ms"].is_number());
    if let Some(s) = o.get("summary") {
        assert!(s["passed"].is_u64() && s["failed"].is_u64());
    }
    if let Some(e) = o.get("error") {
        assert!(e["message"].is_string() && e["exit_code"].is_i64());
    }
    for r in o["results"].as_array().unwrap() {
        let r = r.as_object().unwrap();
        if r.contains_key("id") && r.contains_key("pass") {
            for k in ["id", "lhs", "rhs"] {
                assert!(r[k].is_string(), "{k}");
            }
            assert!(r["params"].as_object().unwrap().values().all(is_str));
            assert!(r["pass"].is_boolean());
            for k in ["diff", "tol", "radius"] {
                assert!(r[k].is_number() || r[k].is_null(), "{k}");
            }
        } else if r.contains_key("id") {
            assert!(r["title"].is_string() && r["default_params"].is_string() && r["params"].is_array());
        } else {
            assert!(r["name"].is_string() && r["value"].is_string());
            assert!(r.get("radius").map_or(true, Value::is_number));
            assert!(r.get("exact").map_or(true, Value::is_boolean));
        }
    }
}

fn close(decimal: &Value, want: &Float, tol: f64) -> bool {
    let got = Float::with_val(want.prec(), Float::parse(decimal.as_str().unwrap()).unwrap());
    Float::with_val(want.prec(), got - want).abs().to_f64() <= tol
}

fn file(name: &str) -> String {
    Path::new("tests/data").join(name).to_string_lossy().into_owned()
}

#[test]
fn value_zeta_3() {
    let o = mzv(&["value", "zeta", "3"]);
    assert_eq!(code(&o), 0);
    golden("value-zeta-3.txt", &stdout(&o));
    let (v, c) = report(&["value", "zeta", "3"]);
    assert_eq!(c, 0);
    let zeta3 = Float::with_val(160, 3).zeta();
    assert!(close(&v["results"][0]["value"], &zeta3, 1e-35));
    golden_json("value-zeta-3.json", &v);
}

#[test]
fn value_barred_one_is_minus_log2() {
    let (v, c) = report(&["value", "zeta", "-1"]);
    assert_eq!(c, 0);
    let log2 = -Float::with_val(160, Constant::Log2);
    assert!(close(&v["results"][0]["value"], &log2, 1e-35));
    golden("value-zeta-bar1.txt", &stdout(&mzv(&["value", "zeta", "-1"])));
}

#[test]
fn divergent_value_exits_3() {
    let o = mzv(&["value", "zeta", "1"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("divergent"));
    let (v, c) = report(&["value", "zeta", "1"]);
    assert_eq!(c, 3);
    assert_eq!(v["error"]["exit_code"], 3);
    assert_eq!(v["results"].as_array().unwrap().len(), 0);
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(code(&mzv(&["value", "zeta", "1,x"])), 2);
    assert_eq!(code(&mzv(&["value", "nosuch", "2"])), 2);
    assert_eq!(code(&mzv(&["sum", "T", "1,1"])), 2);
    assert_eq!(code(&mzv(&["frobnicate"])), 2);
}

#[test]
fn level_two_and_functions() {
    let o = mzv(&["value", "T", "1,2", "--tol", "1e-8"]);
    assert_eq!(code(&o), 0);
    golden("value-T-1-2.txt", &stdout(&o));
    let o = mzv(&["value", "A", "1,1", "--x", "0.5"]);
    assert_eq!(code(&o), 0);
    golden("value-A-1-1-half.txt", &stdout(&o));
    // T(2) = π²/4 and t(2) = π²/8.
    let pi2 = Float::with_val(160, Constant::Pi).square();
    let (v, _) = report(&["value", "T", "2"]);
    assert!(close(&v["results"][0]["value"], &(pi2.clone() / 4u32), 1e-35));
    let (v, _) = report(&["value", "t", "2"]);
    assert!(close(&v["results"][0]["value"], &(pi2 / 8u32), 1e-35));
    // A(1;x) = log((1+x)/(1-x)).
    let (v, _) = report(&["value", "A", "1", "--x", "0.5"]);
    let want = Float::with_val(160, 3u32).ln();
    assert!(close(&v["results"][0]["value"], &want, 1e-35));
}

#[test]
fn exact_sum() {
    let o = mzv(&["sum", "T", "1,1", "2"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "T_2(1,1) = 2\n");
    let (v, _) = report(&["sum", "zeta", "1", "4"]);
    assert_eq!(v["results"][0]["value"], "25/12");
    assert_eq!(v["results"][0]["exact"], true);
}

#[test]
fn verify_single_identity() {
    let o = mzv(&["verify", "POSET-522"]);
    assert_eq!(code(&o), 0);
    golden("verify-poset-522.txt", &stdout(&o));
    assert!(stdout(&o).ends_with("passed 1 / failed 0\n"));
    let (v, c) = report(&["verify", "POSET-522", "--params", "sigma1=1; sigma2=-1"]);
    assert_eq!(c, 0);
    golden_json("verify-poset-522-alt.json", &v);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(code(&mzv(&["verify", "NOSUCH"])), 2);
    assert_eq!(code(&mzv(&["verify", "CZT", "--params", "k=2; m=4"])), 3);
    assert_eq!(code(&mzv(&["verify", "CZT", "--params", "k=2; q=1"])), 2);
    // Error radii near 1e-35 cannot meet 1e-60, so the check fails.
    let o = mzv(&["verify", "S2T", "--tol", "1e-60"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).ends_with("passed 0 / failed 1\n"));
}

#[test]
fn verify_all_is_ordered_and_thread_independent() {
    let (a, ca) = report(&["verify", "--all", "--max-weight", "4", "--threads", "1"]);
    let (b, cb) = report(&["verify", "--all", "--max-weight", "4", "--threads", "3"]);
    assert_eq!((ca, cb), (0, 0));
    assert_eq!(a["results"], b["results"]);
    let n = a["results"].as_array().unwrap().len() as u64;
    assert_eq!(a["summary"]["passed"], n);
    assert_eq!(a["summary"]["failed"], 0);
    let o = mzv(&["verify", "--all", "--max-weight", "4"]);
    golden("verify-all-4.txt", &stdout(&o));
}

#[test]
fn verify_list() {
    let (v, c) = report(&["verify", "--list"]);
    assert_eq!(c, 0);
    let ids: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    for id in ["KY-A2", "CZT", "ALT-NUM", "POSET-522", "T-FINAL", "LT-INT"] {
        assert!(ids.contains(&id), "{id}");
    }
}

#[test]
fn poset_chain_is_zeta_two() {
    let o = mzv(&["poset", "eval", &file("chain-z2.json"), "--symbolic"]);
    assert_eq!(code(&o), 0);
    golden("poset-chain-z2.txt", &stdout(&o));
    let (v, _) = report(&["poset", "eval", &file("chain-z2.json")]);
    let z2 = Float::with_val(160, Constant::Pi).square() / 6u32;
    assert!(close(&v["results"][0]["value"], &z2, 1e-35));
    assert!(v["results"][0].get("combo").is_none());
}

#[test]
fn poset_symbolic_json() {
    let (v, c) = report(&["poset", "eval", &file("product-2x1.json"), "--symbolic"]);
    assert_eq!(c, 0);
    golden_json("poset-product-2x1.json", &v);
}

#[test]
fn bad_inputs_exit_2_or_3() {
    let dir = std::env::temp_dir().join(format!("mzv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, body: &str| {
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p.to_string_lossy().into_owned()
    };
    let missing = write("missing.json", r#"{"level": 1}"#);
    assert_eq!(code(&mzv(&["poset", "eval", &missing])), 2);
    let inadmissible = write("inadm.json", r#"{"level": 1, "nodes": ["a"], "labels": {"a": 0}}"#);
    assert_eq!(code(&mzv(&["poset", "eval", &inadmissible])), 3);
    let skew = write("skew.json", r#"{"modulus": 1, "cells": [{"row": 1, "col": 1, "exponent": 2}, {"row": 2, "col": 2, "exponent": 2}]}"#);
    assert_eq!(code(&mzv(&["schur", "eval", "--bound", "5", &skew])), 2);
    assert_eq!(code(&mzv(&["poset", "eval", "no/such/file.json"])), 2);
}

/// Brute force over fillings of the anti-hook: a above c in one column,
/// b left of c in one row.
fn antihook_bruteforce(bound: u32) -> Rational {
    let mut s = Rational::new();
    for c in 1..=bound {
        for a in 1..c {
            for b in 1..=c {
                s += Rational::from((1, a * b * b)) / Rational::from(c).pow(3);
            }
        }
    }
    s
}

#[test]
fn schur_antihook_exact() {
    let (v, c) = report(&["schur", "eval", "--bound", "30", &file("antihook.json")]);
    assert_eq!(c, 0);
    assert_eq!(v["results"][0]["value"].as_str().unwrap(), antihook_bruteforce(30).to_string());
    golden("schur-antihook-30.txt", &stdout(&mzv(&["schur", "eval", "--bound", "30", &file("antihook.json")])));
}
