use std::process::{Command, Output};

use serde_json::Value;

fn mathieu(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mathieu")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("not JSON ({e}): {}", stdout(o)))
}

fn tmp(name: &str, body: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("mathieu-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn generated_matrix_algebra_round_trips() {
    let o = mathieu(&["--field", "2", "gen", "matrix", "-n", "2"]);
    assert!(o.status.success());
    let first = json(&o);
    let path = tmp("m2.json", &stdout(&o));
    // re-reading the file and asking about the trace-zero hyperplane
    let h = mathieu(&["--field", "2", "gen", "trace-hyperplane", "-n", "2", "--x", "[[1,0],[0,1]]"]);
    assert!(h.status.success());
    let hp = tmp("h.json", &stdout(&h));
    let o = mathieu(&["--theta", "all", "--format", "json", "is-mathieu", "--algebra", path.to_str().unwrap(), "--subspace", hp.to_str().unwrap()]);
    // p = 2 is not above n = 2, so H is not Mathieu
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let again = mathieu(&["gen", "matrix", "-n", "2", "--field", "2"]);
    assert_eq!(json(&again), first);
}

#[test]
fn non_associative_structure_is_rejected_by_name() {
    let o = mathieu(&["--field", "2", "gen", "truncated", "-n", "3"]);
    let mut alg = json(&o);
    // x * x^2 = x, while x^2 * x stays 0
    alg["structure"][1][2] = serde_json::json!([0, 1, 0]);
    let path = tmp("bad.json", &alg.to_string());
    let o = mathieu(&["is-mathieu", "--algebra", path.to_str().unwrap(), "--subspace", "[]"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("associativity") && err.contains("(e1, e1, e1)"), "{err}");
}

#[test]
fn exit_codes_follow_the_answer() {
    let yes = mathieu(&["omega", "--alpha", "[1, 1]"]);
    assert_eq!(yes.status.code(), Some(0));
    let no = mathieu(&["omega", "--alpha", "[1, -1]"]);
    assert_eq!(no.status.code(), Some(1));
    let bad = mathieu(&["omega", "--alpha", "{not json"]);
    assert_eq!(bad.status.code(), Some(2));
    let unknown = mathieu(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));
}

#[test]
fn standard_module_zero_subspace_splits_on_theta() {
    let m = mathieu(&["--field", "3", "gen", "standard-module", "-n", "2"]);
    let path = tmp("std.json", &stdout(&m));
    let o = mathieu(&["--theta", "all", "--format", "json", "tau", "--module", path.to_str().unwrap(), "--subspace", "[]"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let v = json(&o);
    let sizes: Vec<usize> = v["results"].as_array().unwrap().iter().map(|r| r["elements"].as_array().unwrap().len()).collect();
    assert_eq!(sizes, vec![9, 1, 1, 1]);
}

#[test]
fn integral_and_nq_over_q() {
    let half = r#"{"vars":1,"terms":[{"exp":[1],"coef":"1"},{"exp":[0],"coef":"-1/2"}]}"#;
    let o = mathieu(&["--format", "json", "integral", "--a", "0", "--b", "1", "--poly", half]);
    assert!(o.status.success());
    assert_eq!(json(&o)["value"], "0");
    let o = mathieu(&["nq", "tau", "--a", "0", "--b", "1", "--poly", half]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_paper_profiles() {
    let o = mathieu(&["--format", "json", "verify-paper", "--profile", "empty"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["status"], "pass");
    assert_eq!(v["entries"].as_array().unwrap().len(), 0);

    let a = mathieu(&["--format", "json", "verify-paper", "--profile", "quick"]);
    assert!(a.status.success(), "{}", stdout(&a));
    let b = mathieu(&["--format", "json", "verify-paper", "--profile", "quick"]);
    assert_eq!(a.stdout, b.stdout, "reports differ between runs");

    let o = mathieu(&["verify-paper", "--profile", "{\"primes\": [4]}"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn witnesses_round_trip_through_verify_witness() {
    let alg = mathieu(&["--field", "2", "gen", "matrix", "-n", "2"]);
    let path = tmp("m2w.json", &stdout(&alg));
    let o = mathieu(&["--format", "json", "is-mathieu", "--algebra", path.to_str().unwrap(), "--subspace", "[[1,0,0,0]]"]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    let doc = json(&o)["results"][0]["witness"].clone();
    assert!(doc.is_object());
    let wpath = tmp("w.json", &doc.to_string());
    let ok = mathieu(&["verify-witness", wpath.to_str().unwrap()]);
    assert!(ok.status.success(), "{}", stdout(&ok));

    // moving the product into J makes the document false
    let mut tampered = doc.clone();
    tampered["subspace"] = serde_json::json!({"ambient": 4, "basis": [[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]});
    let tpath = tmp("t.json", &tampered.to_string());
    let bad = mathieu(&["verify-witness", tpath.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(1), "{}", stdout(&bad));

    // every witness in a quick report re-validates
    let rpath = std::env::temp_dir().join(format!("mathieu-report-{}.json", std::process::id()));
    let r = mathieu(&["verify-paper", "--profile", "quick", "--output", rpath.to_str().unwrap()]);
    assert!(r.status.success());
    let w = mathieu(&["verify-witness", rpath.to_str().unwrap()]);
    assert!(w.status.success(), "{}", stdout(&w));
}
