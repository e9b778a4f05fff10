//! End-to-end runs of the `vknot` binary on the corpus.

mod common;

use std::process::{Command, Output};

use common::corpus;
use serde_json::Value;
use vknot::algebra::{parse_poly, Vars};

fn vknot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vknot")).args(args).output().expect("binary runs")
}

fn path(name: &str) -> String {
    corpus(name).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = vknot(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

/// The polynomial field parses back over the reported variables.
fn poly_of(v: &Value, field: &str) -> vknot::algebra::LaurentPoly {
    let names: Vec<&str> = v["vars"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    parse_poly(v[field].as_str().unwrap(), &Vars::new(&names)).unwrap()
}

#[test]
fn alexander_text_first_line() {
    let o = vknot(&["alexander", &path("figure_eight.gauss")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("t^2 - 3*t + 1"));
}

#[test]
fn gauss_and_presentation_agree() {
    for (g, p) in [("figure_eight.gauss", "figure_eight.pres"), ("trefoil.gauss", "trefoil.pres")] {
        let a = json(&["alexander", &path(g)]);
        let b = json(&["alexander", &path(p)]);
        assert_eq!(a["polynomial"], b["polynomial"], "{g} vs {p}");
    }
}

#[test]
fn json_polynomials_round_trip() {
    let v = json(&["alexander", &path("trefoil.gauss")]);
    let p = poly_of(&v, "polynomial");
    assert_eq!(p.to_string(), v["polynomial"].as_str().unwrap());

    let v = json(&["virtual", &path("almost_classical.gauss"), "--index", "1"]);
    assert_eq!(v["polynomial"], "2 - u*v");
    assert_eq!(v["obstructed"], false);
    assert_eq!(poly_of(&v, "polynomial").to_string(), "2 - u*v");
}

#[test]
fn twisted_quotient_for_both_deletions() {
    for g in ["a", "b"] {
        let v = json(&[
            "twisted",
            &path("figure_eight.pres"),
            "--rep",
            &path("figure_eight_omega.rep"),
            "--delete",
            g,
        ]);
        assert_eq!(v["quotient"], "t^2 - 4*t + 1");
        assert_eq!(v["deleted"], g);
    }
}

#[test]
fn twisted_is_invariant_under_tietze_move() {
    let base = json(&["twisted", &path("figure_eight.pres"), "--rep", &path("figure_eight_omega.rep"), "--delete", "a"]);
    let rep = std::fs::read_to_string(corpus("figure_eight_omega.rep")).unwrap();
    let extended = vknot::representations::MatrixRep::parse(&rep)
        .unwrap()
        .with_generator("c", &vknot::groups::parse_word("B a", &["a".into(), "b".into()]).unwrap())
        .unwrap();
    let dir = std::env::temp_dir().join(format!("vknot-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let rep_path = dir.join("tietze.rep");
    std::fs::write(&rep_path, extended.to_string()).unwrap();
    let moved = json(&[
        "twisted",
        &path("figure_eight_tietze.pres"),
        "--rep",
        rep_path.to_str().unwrap(),
        "--delete",
        "a",
    ]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(base["quotient"], moved["quotient"]);
}

#[test]
fn virtual_verdicts() {
    let o = vknot(&["virtual", &path("virtual_trefoil.gauss")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("verdict: obstructed"));
    let o = vknot(&["virtual", &path("almost_classical.gauss"), "--index", "1"]);
    assert!(stdout(&o).contains("verdict: not obstructed"));
}

#[test]
fn numbering_outputs() {
    let v = json(&["numbering", &path("virtual_trefoil.gauss")]);
    assert!(v["labels"].is_null());
    let v = json(&["numbering", &path("virtual_trefoil.gauss"), "--mod", "2"]);
    assert!(v["labels"].is_object());
    let v = json(&["numbering", &path("almost_classical.gauss")]);
    assert_eq!(v["labels"].as_object().unwrap().len(), 8);
}

#[test]
fn cover_groups() {
    assert_eq!(json(&["cover", &path("figure_eight.gauss"), "--degree", "2"])["group"], "Z/5");
    assert_eq!(json(&["cover", &path("trefoil.pres"), "--degree", "2"])["group"], "Z/3");
    assert_eq!(json(&["cover", &path("unknot.gauss"), "--degree", "3"])["group"], "trivial");
}

#[test]
fn rewrite_prints_normal_forms() {
    let o = vknot(&["rewrite", &path("figure_eight.pres")]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("# normal form of relator 1"));
}

#[test]
fn exit_codes() {
    assert_eq!(vknot(&["alexander", "/definitely/missing.gauss"]).status.code(), Some(1));
    assert_eq!(vknot(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(vknot(&["cover", &path("trefoil.gauss"), "--degree", "1"]).status.code(), Some(2));
    let bad = vknot(&[
        "twisted",
        &path("figure_eight.pres"),
        "--rep",
        &path("figure_eight_corrupted.rep"),
        "--delete",
        "a",
    ]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("relator 1"));
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "virtual", &path("virtual_trefoil.gauss")];
    let runs: Vec<Vec<u8>> = (0..3).map(|_| vknot(&args).stdout).collect();
    assert!(runs.windows(2).all(|w| w[0] == w[1]));
}
