use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn examples() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn example(name: &str) -> String {
    examples().join(name).to_string_lossy().into_owned()
}

fn zipzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zipzeta")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = zipzeta(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn every_shipped_example_parses() {
    for entry in std::fs::read_dir(examples()).unwrap() {
        let path = entry.unwrap().path();
        let p = path.to_string_lossy();
        let cmd = if p.ends_with("sl2-omega.json") { "lengths" } else { "strata" };
        let out = zipzeta(&[cmd, &p]);
        assert!(out.status.success(), "{p}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn strata_output_feeds_back_into_zeta() {
    let strata = zipzeta(&["strata", &example("a2-flip.json")]);
    assert!(strata.status.success());
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(&strata.stdout).unwrap();
    let path = file.path().to_string_lossy().into_owned();

    let direct = json(&["zeta", &example("a2-flip.json")]);
    let replayed = json(&["zeta", &path]);
    assert_eq!(direct["zeta"], replayed["zeta"]);
    assert_eq!(replayed["input"]["mode"], "strata");
}

#[test]
fn o4_factors() {
    let doc = json(&["zeta", &example("o4.json")]);
    let factors: Vec<(u64, u64, u64)> = doc["zeta"]["factors"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| (f["a"].as_u64().unwrap(), f["f"].as_u64().unwrap(), f["multiplicity"].as_u64().unwrap()))
        .collect();
    let mut sorted = factors.clone();
    sorted.sort();
    assert_eq!(sorted, vec![(0, 1, 2), (1, 1, 2)]);
    assert_eq!(doc["zeta"]["numeric"], "1/((1-t)^2 (1-t/3)^2)");
}

#[test]
fn bt_and_oracle() {
    let doc = json(&["bt", "--h", "2", "--d", "1", "--p", "3"]);
    assert_eq!(doc["zeta"]["numeric"], "1/((1-t) (1-t/3))");

    let doc = json(&["oracle", "--h", "2", "--d", "1", "--p", "2", "--k", "1"]);
    assert_eq!(doc["oracle"]["census"], "3/2");
    assert_eq!(doc["oracle"]["formula"], "3/2");
    assert_eq!(doc["oracle"]["pass"], true);
}

#[test]
fn count_and_series() {
    let doc = json(&["count", &example("gl3-d1.json"), "--v", "2"]);
    assert_eq!(doc["counts"][0]["numeric"], "7/4");
    assert_eq!(doc["counts"][1]["numeric"], "21/16");

    let doc = json(&["bt", "--h", "2", "--d", "1", "--p", "2", "--series", "2"]);
    let numeric: Vec<&str> = doc["series"].as_array().unwrap().iter().map(|s| s["numeric"].as_str().unwrap()).collect();
    assert_eq!(numeric, ["1", "3/2", "7/4"]);
}

#[test]
fn sl2_lengths() {
    let doc = json(&["lengths", &example("sl2-omega.json")]);
    let ell = |i: &[u64], j: &[u64], x: &str| {
        doc["lengths"]
            .as_array()
            .unwrap()
            .iter()
            .find(|l| l["I"] == serde_json::json!(i) && l["J"] == serde_json::json!(j) && l["element"] == x)
            .map(|l| l["ell"].as_u64().unwrap())
    };
    assert_eq!(ell(&[], &[], "e·w"), Some(1));
    assert_eq!(ell(&[], &[1], "e·w"), Some(0));
    assert_eq!(ell(&[1], &[1], "e·w"), Some(0));
    assert_eq!(ell(&[1], &[], "e·w"), Some(0));
}

#[test]
fn exit_codes() {
    // Θ = {w} is not a subgroup
    let bad_theta = r#"{"cartan": [[2, 0], [0, 2]],
        "omega": {"elements": ["1", "w"], "table": [["1", "w"], ["w", "1"]], "diagram_action": [[1, 2], [2, 1]]},
        "q0": 2, "I": [], "theta": ["w"]}"#;
    assert_eq!(zipzeta(&["strata", bad_theta]).status.code(), Some(2));
    assert_eq!(zipzeta(&["strata", r#"{"cartan": "A2", "q0": 2, "I": [], "bogus": 1}"#]).status.code(), Some(2));
    assert_eq!(zipzeta(&["strata", "/nonexistent/config.json"]).status.code(), Some(1));
    assert_eq!(zipzeta(&["bt", "--h", "2", "--d", "3", "--p", "2"]).status.code(), Some(2));
    assert_eq!(zipzeta(&["bt", "--h", "2", "--d", "1", "--p", "4"]).status.code(), Some(2));
    assert_eq!(zipzeta(&["oracle", "--h", "4", "--d", "2", "--p", "3", "--k", "1"]).status.code(), Some(4));
    // the unbased Ω of the SL_2 example cannot carry a zip datum
    assert_eq!(zipzeta(&["strata", &example("sl2-omega.json")]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic_across_execution_modes() {
    let path = example("gl6-d3.json");
    let a = zipzeta(&["strata", &path]);
    let b = zipzeta(&["strata", &path, "--sequential"]);
    let c = zipzeta(&["strata", &path]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn text_format() {
    let out = zipzeta(&["zeta", &example("a2-flip.json"), "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Z(t) = 1/((1-t) (1-(q^-1 t)^2) (1-(q^-2 t)^2) (1-q^-3 t))"), "{text}");
    assert!(text.contains("representative"));
}
