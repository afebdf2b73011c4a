use std::path::{Path, PathBuf};
use std::process::Command;

use hyperbolic_landau::cli::{run, EXIT_ORACLE_MISMATCH, EXIT_USAGE, EXIT_VALIDATION};
use hyperbolic_landau::{Rational, Scalar};
use serde_json::{json, Value};
use tempfile::TempDir;

fn hyperlandau(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hyperlandau"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok_json(args: &[&str]) -> Value {
    let (code, stdout, stderr) = hyperlandau(args);
    assert_eq!(code, 0, "{args:?}: {stderr}");
    let v: Value = serde_json::from_str(&stdout).unwrap();
    // the pretty printer is canonical, so the document survives a round trip byte for byte
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", stdout);
    v
}

fn write(dir: &TempDir, name: &str, doc: &Value) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, doc.to_string()).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn half_turn_theta(dir: &TempDir) -> PathBuf {
    write(
        dir,
        "t2.json",
        &json!({ "p": 2, "entries": [["0", "1/2"], ["-1/2", "0"]] }),
    )
}

#[test]
fn spectrum_csv_table() {
    let (code, stdout, _) = hyperlandau(&["spectrum", "--genus", "2", "--theta", "10", "--format", "csv"]);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "q,mu,dolbeault,dim_tau\n0,10,0,9\n1,26,8,7\n2,38,14,5\n3,46,18,3\n"
    );
}

#[test]
fn exact_spectrum_is_byte_stable() {
    let args = ["spectrum", "--genus", "2", "--theta", "10", "--exact"];
    let first = hyperlandau(&args).1;
    assert_eq!(first, hyperlandau(&args).1);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["m"], 4);
    assert_eq!(v["boundary_mu"], "50");
    assert_eq!(v["boundary_certified"], false);
    let mus: Vec<&str> = v["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["mu"].as_str().unwrap())
        .collect();
    assert_eq!(mus, ["10", "26", "38", "46"]);
}

#[test]
fn rational_theta_stays_rational() {
    let v = ok_json(&["spectrum", "--genus", "3", "--theta", "25/2", "--exact"]);
    assert_eq!(v["theta"], "25/2");
    let dims: Vec<Rational> = v["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| Rational::from_json(&l["dim_tau"]).unwrap())
        .collect();
    assert_eq!(dims.first().unwrap().to_text(), "21/2");
}

#[test]
fn index_reports_dimension() {
    let v = ok_json(&["index", "--genus", "2", "--theta", "21/2", "--q", "1", "--exact"]);
    assert_eq!(v["index"], "15/2");
    assert_eq!(v["dim_tau"], "15/2");
    assert_eq!(v["vanishing_h1"], true);
    let v = ok_json(&[
        "index", "--genus", "4", "--theta", "3", "--deg", "5", "--rank", "2", "--exact",
    ]);
    // 5 + 2·3 + (1 - 4)·2
    assert_eq!(v["index"], "5");
}

#[test]
fn chern_examples() {
    let v = ok_json(&["chern", "--g-cover", "2", "--group-order", "2", "--orbits", "2,2"]);
    assert_eq!(v["chern"], "2/1");
    assert_eq!(v["cover_identity_check"], true);
    assert_eq!(ok_json(&["chern", "--genus", "5"])["chern"], "10/1");
    let (code, _, stderr) = hyperlandau(&["chern", "--g-cover", "2", "--group-order", "2", "--orbits", "2"]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(stderr.contains("not an integer"));
}

#[test]
fn trace_range_from_file() {
    let dir = TempDir::new().unwrap();
    let theta = half_turn_theta(&dir);
    let v = ok_json(&["trace-range", "--theta-file", s(&theta)]);
    let values: Vec<&str> = v["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["value"].as_str().unwrap())
        .collect();
    assert_eq!(values, ["1", "1/2"]);
    let (_, csv, _) = hyperlandau(&["trace-range", "--theta-file", s(&theta), "--format", "csv"]);
    assert_eq!(csv, "subset,value,tag\n,1,unit\n1 2,1/2,top\n");
}

#[test]
fn higher_trace_range_tags() {
    let dir = TempDir::new().unwrap();
    let theta = write(
        &dir,
        "t4.json",
        &json!({ "p": 4, "entries": [
            ["0", "0", "2/3", "0"], ["0", "0", "0", "5/7"], ["-2/3", "0", "0", "0"], ["0", "-5/7", "0", "0"]
        ]}),
    );
    let v = ok_json(&["higher-trace-range", "--theta-file", s(&theta)]);
    let gens = v["generators"].as_array().unwrap();
    let got: Vec<(&str, &str, Value)> = gens
        .iter()
        .map(|g| {
            (
                g["value"].as_str().unwrap(),
                g["tag"].as_str().unwrap(),
                g["parent"].clone(),
            )
        })
        .collect();
    assert_eq!(
        got,
        [
            ("1", "higher(1)", json!([1, 3])),
            ("5/7", "higher(1)", json!([1, 2, 3, 4])),
            ("1", "higher(2)", json!([2, 4])),
            ("2/3", "higher(2)", json!([1, 2, 3, 4])),
        ]
    );
    let (code, _, _) = hyperlandau(&["higher-trace-range", "--theta-file", s(&theta), "--genus", "3"]);
    assert_eq!(code, EXIT_VALIDATION);
}

#[test]
fn nct_exact_and_float_agree() {
    let dir = TempDir::new().unwrap();
    let theta = half_turn_theta(&dir);
    let float_theta = write(
        &dir,
        "t2f.json",
        &json!({ "p": 2, "entries": [[0.0, 0.5], [-0.5, 0.0]] }),
    );
    let u1 = write(
        &dir,
        "u1.json",
        &json!({ "p": 2, "terms": [{ "n": [1, 0], "re": 1, "im": 0 }] }),
    );
    let u2 = write(
        &dir,
        "u2.json",
        &json!({ "p": 2, "terms": [{ "n": [0, 1], "re": 1, "im": 0 }] }),
    );

    let h = ok_json(&[
        "nct",
        "--theta-file",
        s(&theta),
        "--op",
        "product",
        "--element",
        s(&u1),
        "--element",
        s(&u2),
    ]);
    assert_eq!(
        h,
        json!({ "p": 2, "terms": [{ "n": [1, 1], "phases": [{ "turns": "0", "coeff": "-1" }] }] })
    );
    let h = write(&dir, "h.json", &h);
    let hs = write(
        &dir,
        "hs.json",
        &ok_json(&["nct", "--theta-file", s(&theta), "--op", "adjoint", "--element", s(&h)]),
    );

    let cocycle = [
        "--op",
        "cocycle",
        "--element",
        s(&hs),
        "--element",
        s(&u1),
        "--element",
        s(&u2),
    ];
    let exact = ok_json(&[&["nct", "--theta-file", s(&theta)][..], &cocycle].concat());
    assert_eq!(
        exact,
        json!({ "value": [{ "turns": "0", "coeff": "1" }], "scale": "(2*pi*i)^2" })
    );
    let float = ok_json(&[&["nct", "--theta-file", s(&float_theta)][..], &cocycle].concat());
    let re = float["value"]["re"].as_f64().unwrap();
    assert!((re + 4.0 * std::f64::consts::PI.powi(2)).abs() <= 1e-9);

    let sigma = ok_json(&[
        "nct",
        "--theta-file",
        s(&float_theta),
        "--op",
        "sigma",
        "--gamma",
        "1,0",
        "--gamma-prime",
        "0,1",
    ]);
    assert!((sigma["value"]["re"].as_f64().unwrap() + 1.0).abs() < 1e-15);
    let (code, _, stderr) = hyperlandau(&["nct", "--theta-file", s(&theta), "--op", "product", "--element", s(&u1)]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(stderr.contains("takes 2"));
}

#[test]
fn exit_codes() {
    assert_eq!(hyperlandau(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(hyperlandau(&[]).0, EXIT_USAGE);
    assert_eq!(hyperlandau(&["--help"]).0, 0);
    assert_eq!(hyperlandau(&["--version"]).0, 0);
    assert_eq!(
        hyperlandau(&["spectrum", "--genus", "1", "--theta", "3"]).0,
        EXIT_VALIDATION
    );
    assert_eq!(
        hyperlandau(&["spectrum", "--genus", "2", "--theta", "x/y"]).0,
        EXIT_VALIDATION
    );
    assert_eq!(
        hyperlandau(&["trace-range", "--theta-file", "/nonexistent/theta.json"]).0,
        EXIT_VALIDATION
    );
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        &json!({ "p": 2, "entries": [["0", "1"], ["1", "0"]] }),
    );
    let (code, _, stderr) = hyperlandau(&["trace-range", "--theta-file", s(&bad)]);
    assert_eq!(code, EXIT_VALIDATION);
    assert!(stderr.contains("skew"), "{stderr}");
}

#[test]
fn verify_landau_mismatch_prints_table() {
    let out = run([
        "hyperlandau",
        "verify-landau",
        "--beta",
        "5",
        "--grid",
        "1000",
        "--tolerance",
        "1e-9",
    ]);
    assert_eq!(out.code, EXIT_ORACLE_MISMATCH);
    assert!(out.stderr.lines().count() >= 5);
    assert!(out.stderr.contains("FAIL"));
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["levels"].as_array().unwrap().len(), 4);
}

#[test]
fn verify_landau_defaults_pass() {
    let out = run([
        "hyperlandau",
        "--format",
        "csv",
        "verify-landau",
        "--genus",
        "2",
        "--theta",
        "10",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let mut lines = out.stdout.lines();
    assert_eq!(lines.next(), Some("q,ell,numeric,analytic,rel_error,below_edge"));
    assert!(lines.all(|l| l.split(',').count() == 6));
}
