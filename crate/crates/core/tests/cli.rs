use std::path::PathBuf;
use std::process::{Command, Output};

use extalg::algebra::Algebra;
use extalg::field::Field;
use extalg::flag::{classify_codim1, EquivMode};
use extalg::json::{AlgebraJson, ClassifiedJson};
use serde_json::Value;

fn data(name: &str) -> String {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name);
    root.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extalg")).args(args).output().expect("binary runs")
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = run(&all);
    let text = String::from_utf8(out.stdout).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("one json document expected: {e}\n{text}"));
    (out.status.code().unwrap(), doc)
}

#[test]
fn galois_of_first_example() {
    let (code, doc) = run_json(&["galois", "--algebra", &data("gal_dual.json"), "--sub", "1,x", "--field", "GF(2)"]);
    assert_eq!(code, 0);
    assert_eq!(doc["order"], 2);
    assert_eq!(doc["abelian"], true);
    assert_eq!(doc["is_galois"], true);
    assert_eq!(doc["methods_agree"], true);
}

#[test]
fn bad_datum_names_failing_axiom() {
    let (code, doc) = run_json(&["verify", "--datum", &data("bad.json")]);
    assert_eq!(code, 1);
    let failing: Vec<&str> = doc["statuses"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|s| s["holds"] == false)
        .map(|s| s["name"].as_str().unwrap())
        .collect();
    assert_eq!(failing, ["normalization"]);
    let out = run(&["verify", "--datum", &data("bad.json")]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("failing: normalization"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["catalog", "--dim", "3"]).status.code(), Some(2));
    assert_eq!(run(&["classify", "--base", &data("k00.json")]).status.code(), Some(2));
    assert_eq!(run(&["galois", "--algebra", "/nonexistent.json", "--sub", "1"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let (code, doc) = run_json(&["catalog", "--dim", "3", "--field", "GF(6)"]);
    assert_eq!(code, 2);
    assert_eq!(doc["error"], "NotPrime");
}

#[test]
fn module_errors_are_named() {
    let (code, doc) = run_json(&["flag-enum", "--base", &data("k00.json"), "--field", "Q"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"], "UnsupportedOverInfiniteField");
    let (code, doc) = run_json(&["catalog", "--dim", "3", "--field", "Q", "--check"]);
    assert_eq!(code, 1);
    assert_eq!(doc["error"], "UnsupportedOverInfiniteField");
}

#[test]
fn classify_matches_library() {
    let (code, doc) = run_json(&["classify", "--codim1", "--base", &data("k00.json"), "--field", "GF(2)"]);
    assert_eq!(code, 0);
    let f = Field::prime(2).unwrap();
    let k00 = Algebra::two_dim(&f, &f.zero(), &f.zero());
    let expected = ClassifiedJson::from_family(&k00, &classify_codim1(&k00, EquivMode::Equivalent).unwrap());
    let got: ClassifiedJson = serde_json::from_value(doc).unwrap();
    assert_eq!(got, expected);
    assert_eq!(got.class_count, 4);
}

#[test]
fn catalog_check_passes_over_gf2() {
    let (code, doc) = run_json(&["catalog", "--dim", "3", "--field", "GF(2)", "--check"]);
    assert_eq!(code, 0);
    assert_eq!(doc["count"], 12);
    assert_eq!(doc["check"]["result"], "PASS");
}

#[test]
fn catalog_over_q_reports_infinite_family() {
    let (code, doc) = run_json(&["catalog", "--dim", "2", "--field", "Q"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = doc["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["k_(0,0)", "k_(0,1)", "k_(d,0)"]);
    assert!(doc["entries"][2]["algebra"].is_null());
    assert!(doc["entries"][2]["note"].as_str().unwrap().contains("infinite"));
    let (_, doc) = run_json(&["catalog", "--dim", "2", "--field", "GF(4)"]);
    assert_eq!(doc["count"], 3);
}

#[test]
fn emitted_algebras_reingest() {
    let (code, doc) = run_json(&["supersolvable", "--dim", "3", "--field", "GF(3)"]);
    assert_eq!(code, 0);
    let algs = doc["algebras"].as_array().unwrap();
    assert_eq!(algs.len(), 6);
    for a in algs {
        let aj: AlgebraJson = serde_json::from_value(a.clone()).unwrap();
        assert!(aj.to_algebra(None).unwrap().is_valid());
    }
    let (_, doc) = run_json(&["product", "--kind", "crossed", "--input", &data("crossed_kxk.json")]);
    let aj: AlgebraJson = serde_json::from_value(doc).unwrap();
    let e = aj.to_algebra(None).unwrap();
    assert!(e.is_valid());
    let f = Field::prime(3).unwrap();
    assert!(extalg::algebra::is_isomorphic(&e, &Algebra::matrix_algebra(&f, 2)).unwrap().is_some());
}

#[test]
fn factorization_round_trip() {
    let (code, doc) = run_json(&["factorize", "--input", &data("factorize_m2.json")]);
    assert_eq!(code, 0);
    assert_eq!(doc["round_trip"], true);
}

#[test]
fn output_independent_of_threads() {
    let args = |t: &'static str| ["--threads", t, "oracle", "--dim", "3", "--field", "GF(2)", "--supersolvable"];
    let (_, one) = run_json(&args("1"));
    let (_, two) = run_json(&args("3"));
    assert_eq!(one, two);
    assert_eq!(one["classes"].as_array().unwrap().len(), 6);
    let out1 = Command::new(env!("CARGO_BIN_EXE_extalg"))
        .env("EXTALG_THREADS", "2")
        .args(["--format", "json", "classify", "--codim1", "--base", &data("k01.json")])
        .output()
        .unwrap();
    let out2 = run(&["--format", "json", "--threads", "1", "classify", "--codim1", "--base", &data("k01.json")]);
    assert_eq!(out1.stdout, out2.stdout);
    assert_eq!(out1.status.code(), Some(0));
}

#[test]
fn sampled_verification_is_seeded() {
    let args = ["verify", "--sample", "60", "--base", &data("k00.json"), "--v-dim", "1", "--seed", "9"];
    let (code, a) = run_json(&args);
    let (_, b) = run_json(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    assert_eq!(a["discrepancies"].as_array().unwrap().len(), 0);
}
