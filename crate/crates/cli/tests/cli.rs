use std::collections::HashSet;
use std::path::Path;
use std::process::{Command, Output};

use nonsolv_cli::report::run_scenario;
use nonsolv_cli::scenario::{load, load_default, matches};
use serde_json::Value;

fn nonsolv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonsolv")).args(args).output().expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn every_criterion_has_exactly_one_scenario() {
    let all = load_default().unwrap();
    for n in 1..=10 {
        let claim: Vec<_> = all.iter().filter(|s| s.criterion == Some(n)).collect();
        assert_eq!(claim.len(), 1, "criterion {n}");
        assert!(claim[0].time_limit_s.is_some());
    }
    let ids: HashSet<_> = all.iter().map(|s| &s.id).collect();
    assert_eq!(ids.len(), all.len());
    for id in ["an-a5-witness", "table1-sp6-2-transvection", "ppart-e7-q2-e18"] {
        assert!(ids.contains(&id.to_string()), "{id}");
    }
}

#[test]
fn filters() {
    assert!(matches("all", "anything"));
    assert!(matches("table1-*", "table1-s5-transposition"));
    assert!(!matches("table1-*", "bounds-psl2"));
    assert!(matches("*-psl2", "bounds-psl2"));
    assert!(matches("an-a5-witness", "an-a5-witness"));
    assert!(!matches("an-a5", "an-a5-witness"));
    assert!(!matches("a.5", "ab5"));
}

#[test]
fn duplicate_ids_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scenarios.json");
    let one = r#"{"id": "x", "kind": "oracle_check", "cases": []}"#;
    std::fs::write(&path, format!(r#"{{"scenarios": [{one}, {one}]}}"#)).unwrap();
    assert!(load(&path).is_err());
}

#[test]
fn a5_witness_report() {
    let o = nonsolv(&["run", "--suite", "an-a5-witness"]);
    assert!(o.status.success());
    let r = lines(&o);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0]["spec_version"], 1);
    assert_eq!(r[0]["outcome"], "pass");
    assert_eq!(r[0]["results"][0]["detail"]["generated_order"], "60");
    assert!(r[0].get("timing_ms").is_none());
}

#[test]
fn reports_are_deterministic_and_sorted() {
    let run = || nonsolv(&["run", "--suite", "bounds-*", "--workers", "3"]).stdout;
    let (a, b) = (run(), run());
    assert_eq!(a, b);
    let ids: Vec<String> = String::from_utf8(a)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["scenario"].as_str().unwrap().to_string())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(ids.len() >= 5);
}

#[test]
fn same_seed_same_report() {
    let all = load_default().unwrap();
    for id in ["positive-order6-psl3-3", "bounds-countinv-sz8-order7"] {
        let s = all.iter().find(|s| s.id == id).unwrap();
        let a = serde_json::to_string(&run_scenario(s, 7, false)).unwrap();
        let b = serde_json::to_string(&run_scenario(s, 7, false)).unwrap();
        assert_eq!(a, b, "{id}");
    }
}

#[test]
fn empty_suite_succeeds() {
    let o = nonsolv(&["run", "--suite", "no-such-scenario*"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
}

#[test]
fn list_and_show() {
    let o = nonsolv(&["list"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("criterion-01-explicit-witnesses\twitness")));
    let s = stdout_json(&nonsolv(&["show", "ppart-e7-q2-e18"]));
    assert_eq!(s["kind"], "ppart_check");
    assert!(!nonsolv(&["show", "nope"]).status.success());
}

#[test]
fn search_command() {
    let o = nonsolv(&["search", "--group", "A5", "--x", "(1,2,3,4,5)", "--mode", "involution"]);
    assert!(o.status.success());
    let v = stdout_json(&o);
    assert_eq!(v["found"], true);
    assert_eq!(v["witness"]["generated_order"], "60");

    // Transpositions never get there, so the search reports failure with exit 1.
    let o = nonsolv(&["search", "--group", "S6", "--x", "(1,2)", "--mode", "triple", "--exhaustive"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout_json(&o)["found"], false);

    let o = nonsolv(&["search", "--group", "PSL(3,3)", "--element", "13", "--mode", "involution"]);
    assert_eq!(stdout_json(&o)["witness"]["x_order"], 13);

    assert_eq!(nonsolv(&["search", "--group", "Q8x", "--x", "(1,2)"]).status.code(), Some(2));
}

#[test]
fn bounds_command() {
    let v = stdout_json(&nonsolv(&["bounds", "--lemma", "psl2", "--q", "7"]));
    assert_eq!(v["passes"], true);
    let vals = v["values"]["values"].as_array().unwrap();
    let get = |n: &str| vals.iter().find(|x| x["name"] == n).unwrap()["value"].clone();
    assert_eq!(get("lhs"), "21");
    assert_eq!(get("2 i2(B) + i2(D)"), "18");

    let v = stdout_json(&nonsolv(&["bounds", "--lemma", "fieldaut", "--family", "Sz", "--q", "2", "--p", "5"]));
    assert_eq!(v["passes"], true);

    let v = stdout_json(&nonsolv(&["bounds", "--lemma", "countinv", "--scenario", "sz8-order13"]));
    assert_eq!(v["passes"], true);
    let o = nonsolv(&["bounds", "--lemma", "countinv", "--scenario", "sz8-order13", "--involutions", "3"]);
    assert_eq!(o.status.code(), Some(1));

    assert_eq!(nonsolv(&["bounds", "--lemma", "psl2", "--q", "6"]).status.code(), Some(2));
}

#[test]
fn ppart_and_table_commands() {
    let v = stdout_json(&nonsolv(&["ppart", "--family", "E7", "--q", "2", "--row", "18,q^9+1"]));
    assert_eq!(v["passes"], true);
    assert_eq!(v["rows"][0]["primes"][0]["p"], 19);

    let v = stdout_json(&nonsolv(&["table", "--name", "A5"]));
    assert_eq!(v["nonsolvable"], true);
    assert_eq!(v["triple"]["orders"], serde_json::json!([2, 3, 5]));
    let v = stdout_json(&nonsolv(&["table", "--name", "S4", "--structure"]));
    assert_eq!(v["nonsolvable"], false);
    assert_eq!(v["structure_counts"].as_array().unwrap().len(), 125);
    // Not shipped: computed from the group.
    let v = stdout_json(&nonsolv(&["table", "--name", "S5"]));
    assert_eq!(v["classes"], 7);
    assert_eq!(v["nonsolvable"], true);
}

#[test]
fn catalog_commands() {
    let o = nonsolv(&["catalog", "list"]);
    assert!(String::from_utf8(o.stdout).unwrap().contains("Sz(8)\t29120"));
    let o = nonsolv(&["catalog", "verify", "--name", "PSL(2,7)"]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("SL(2,7)\tok 336"));
    let v = stdout_json(&nonsolv(&["catalog", "export"]));
    assert!(v.as_array().unwrap().len() >= 20);
}

#[test]
fn data_dir_override() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("scenarios.json"),
        r#"{"scenarios": [{"id": "mine", "kind": "witness",
            "cases": [{"group": "S4", "x": "(1,2,3,4)", "partners": ["(1,2)"]}]}]}"#,
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_nonsolv"))
        .args(["run"])
        .env("NONSOLV_DATA", dir.path())
        .output()
        .unwrap();
    // S4 is solvable: the report is a failure and so is the exit status.
    assert_eq!(o.status.code(), Some(1));
    let r = lines(&o);
    assert_eq!(r.len(), 1);
    assert_eq!(r[0]["scenario"], "mine");
    assert_eq!(r[0]["outcome"], "fail");
    assert!(Path::new(dir.path()).exists());
}
