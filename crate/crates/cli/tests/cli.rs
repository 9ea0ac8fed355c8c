use std::fs;
use std::process::{Command, Output};

use logarr::arrangement::{catalog_names, parse_catalog_spec};
use logarr::Arrangement;
use serde_json::Value;

fn logarr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_logarr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn analyze_hesse() {
    let o = logarr(&["analyze", "catalog:hesse12"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["schema"], "logarr/1");
    assert_eq!(v["c2"], 28);
    assert_eq!(v["profile"], serde_json::json!({ "2": 12, "4": 9 }));
    assert_eq!(v["result"]["status"], "free");
    assert_eq!((v["result"]["a"].as_u64(), v["result"]["b"].as_u64()), (Some(4), Some(7)));
}

#[test]
fn analyze_pencil() {
    let v = json(&logarr(&["analyze", "catalog:pencil(6)"]));
    assert_eq!(v["pencil"], true);
    assert_eq!(v["c2"], 0);
    assert_eq!((v["result"]["a"].as_u64(), v["result"]["b"].as_u64()), (Some(0), Some(5)));
    assert_eq!(v["oracle_dims"], serde_json::json!([1]));
}

#[test]
fn analyze_text_and_no_verify() {
    let o = logarr(&["analyze", "catalog:braid", "--text", "--no-verify"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("result       Free(2, 3)"), "{text}");
    assert!(!text.contains("oracle"));
}

#[test]
fn duplicate_lines_are_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dup.json");
    fs::write(&path, r#"{"lines": [[1, 0, 0], [0, 1, 0], [2, 0, 0]]}"#).unwrap();
    let o = logarr(&["analyze", path.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("DuplicateLine"));
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_inputs_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{ not json").unwrap();
    for args in [
        vec!["analyze", path.to_str().unwrap()],
        vec!["analyze", "/no/such/file.json"],
        vec!["analyze", "catalog:nope"],
        vec!["analyze", "catalog:hesse12", "--json", "--text"],
        vec!["analyze", "catalog:hesse12", "--seed", "x"],
        vec!["bogus"],
    ] {
        let o = logarr(&args);
        assert_eq!(code(&o), 1, "{args:?}");
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
    assert_eq!(code(&logarr(&["--help"])), 0);
}

#[test]
fn dz_examples() {
    assert_eq!(json(&logarr(&["dz", "catalog:hesse12"]))["d"], 4);
    assert_eq!(json(&logarr(&["dz", "catalog:triangle"]))["d"], 1);
    let v = json(&logarr(&["dz", "catalog:triangle", "--point", "1,2,3"]));
    assert_eq!(v["d"], 1);
    assert_eq!(v["probabilistic"], false);
    let o = logarr(&["dz", "catalog:triangle", "--point", "0,1,0"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("PointInZ"));
}

#[test]
fn delete_examples() {
    let v = json(&logarr(&["delete", "catalog:hesse12", "--index", "0"]));
    assert_eq!(v["t"], 6);
    assert_eq!(v["deleted"]["status"], serde_json::json!({ "status": "free", "a": 4, "b": 6 }));
    assert_eq!(v["deleted"]["arrangement"]["lines"].as_array().unwrap().len(), 11);
    let deleted = Arrangement::from_json(&v["deleted"]["arrangement"].to_string()).unwrap();
    assert_eq!(deleted, parse_catalog_spec("hesse12").unwrap().build().unwrap().delete(0).unwrap());

    let o = logarr(&["delete", "catalog:triangle", "--index", "5"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("IndexOutOfRange"));

    // The hub line z = 0 of near_pencil(6) is the last one; it meets the
    // other five in double points, so t = 0.
    let v = json(&logarr(&["delete", "catalog:near_pencil(6)", "--index", "5"]));
    assert_eq!(v["t"], 0);
    assert_eq!(v["alternatives"]["cases"][0]["applies"], true);
    assert_eq!(v["deleted"]["status"], serde_json::json!({ "status": "free", "a": 0, "b": 4 }));
}

#[test]
fn terao_examples() {
    let o = logarr(&["terao", "catalog:triangle", "catalog:pencil(3)"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["comparison"]["same_type"], false);
    assert_eq!(v["comparison"]["conforming"], true);

    let dir = tempfile::tempdir().unwrap();
    let moved = parse_catalog_spec("hesse12")
        .unwrap()
        .build()
        .unwrap()
        .transform_ints([[1, 1, 0], [0, 2, 1], [3, 0, 1]])
        .unwrap();
    let path = dir.path().join("moved.json");
    fs::write(&path, moved.to_json()).unwrap();
    let o = logarr(&["terao", "catalog:hesse12", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["comparison"]["same_type"], true);
    assert_eq!(v["comparison"]["freeness_b"]["a"], 4);
}

#[test]
fn render_examples() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.svg");
    let o = logarr(&["render", "catalog:triangle", "--out", path.to_str().unwrap(), "--width", "300"]);
    assert_eq!(code(&o), 0);
    let svg = fs::read_to_string(&path).unwrap();
    assert!(svg.contains(r#"version="1.1""#) && svg.contains(r#"width="300""#));
    assert_eq!(svg.matches("<line ").count(), 3);
    assert_eq!(svg.matches(r#"data-multiplicity="2""#).count(), 3);

    let svg = stdout(&logarr(&["render", "catalog:near_pencil(5)"]));
    assert_eq!(svg.matches("<line ").count(), 5);
    assert_eq!(svg.matches(r#"data-multiplicity="4""#).count(), 1);
    assert_eq!(svg, stdout(&logarr(&["render", "catalog:near_pencil(5)"])));

    let o = logarr(&["render", "catalog:hesse12"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("FieldNotReal"));
}

#[test]
fn catalog_listing_and_round_trip() {
    let o = logarr(&["catalog"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().count() >= 6);
    for (name, _) in catalog_names() {
        let spec = match name.split_once('(') {
            None => name.to_string(),
            Some((base, _)) if base == "pencil" || base == "near_pencil" => format!("{base}(5)"),
            Some((base, _)) => format!("{base}(6,3)"),
        };
        let o = logarr(&["catalog", &spec]);
        assert_eq!(code(&o), 0, "{spec}");
        let parsed = Arrangement::from_json(&stdout(&o)).unwrap();
        assert_eq!(parsed, parse_catalog_spec(&spec).unwrap().build().unwrap(), "{spec}");
    }
    let hesse: Value = json(&logarr(&["catalog", "hesse12"]));
    assert_eq!(hesse["field"]["minpoly"], serde_json::json!(["1", "1", "1"]));
    assert_eq!(hesse["lines"].as_array().unwrap().len(), 12);
    assert_eq!(code(&logarr(&["catalog", "nope"])), 1);
}

#[test]
fn reports_are_deterministic() {
    for input in ["catalog:dual_hesse9", "catalog:generic_random(7,3)", "catalog:random_grid(8,5)"] {
        let strip = |o: &Output| {
            let mut v = json(o);
            v.as_object_mut().unwrap().remove("timings");
            serde_json::to_string(&v).unwrap()
        };
        let a = logarr(&["analyze", input, "--seed", "7"]);
        let b = logarr(&["analyze", input, "--seed", "7"]);
        assert_eq!(strip(&a), strip(&b), "{input}");
    }
}
