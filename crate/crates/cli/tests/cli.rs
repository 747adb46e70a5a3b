use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn ants(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ants")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn check<'a>(report: &'a Value, id: &str) -> &'a Value {
    report["checks"].as_array().unwrap().iter().find(|c| c["check_id"] == id).unwrap()
}

#[test]
fn verify_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let ra = ants(&["verify", "--seed", "5", "--out", a.to_str().unwrap()]);
    let rb = ants(&["verify", "--seed", "5", "--out", b.to_str().unwrap()]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ra.status.code(), rb.status.code());

    let report: Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    let eq15 = check(&report, "eq15-structure-equations");
    assert_eq!(eq15["residual_or_value"], "0");
    assert_eq!(eq15["status"], "pass");
    for key in ["check_id", "paper_anchor", "status", "residual_or_value", "tolerance", "runtime_ms"] {
        assert!(eq15.get(key).is_some(), "{key}");
    }
    let ids: Vec<&str> = report["checks"].as_array().unwrap().iter().map(|c| c["check_id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);

    // exit status follows the report
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] != "pass")
        .map(|c| c["check_id"].as_str().unwrap())
        .collect();
    assert_eq!(ra.status.code(), Some(if failed.is_empty() { 0 } else { 1 }));
}

#[test]
fn mutated_structure_constant_exits_one() {
    let o = ants(&["verify", "--only", "eq15-structure-equations", "--mutate-structure"]);
    assert_eq!(o.status.code(), Some(1));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(check(&report, "eq15-structure-equations")["status"], "fail");

    let clean = ants(&["verify", "--only", "identities"]);
    assert_eq!(clean.status.code(), Some(0));
}

#[test]
fn only_filters_to_a_subset() {
    let o = ants(&["verify", "--only", "extremals", "--format", "csv"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.starts_with("extremal-")));
    assert_eq!(ants(&["verify", "--only", "nonsense"]).status.code(), Some(2));
}

#[test]
fn tolerance_flags_reach_the_report() {
    let o = ants(&["verify", "--only", "chain", "--tol-bisectrix", "1e-3"]);
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(check(&report, "vertex-bisectrix")["tolerance"], "1e-3");
    assert_eq!(report["tolerances"]["bisectrix"], 1e-3);
}

#[test]
fn analyze_models() {
    let a = stdout(&ants(&["analyze", "rule-a"]));
    assert!(a.contains("growth: (3,6)"), "{a}");
    assert!(a.contains("symmetry dimension (degree <= 2): 8"), "{a}");
    let s = stdout(&ants(&["analyze", "sqrt-b"]));
    assert!(s.contains("growth: (2,3,5)"), "{s}");
    let b = stdout(&ants(&["analyze", "rule-b"]));
    assert!(b.contains("first integral: 32A"), "{b}");
    let j: Value = serde_json::from_str(&stdout(&ants(&["analyze", "quadric235", "--format", "json"]))).unwrap();
    assert_eq!(j["growth"], "(2,3,5)");
    assert_eq!(ants(&["analyze", "rule-c"]).status.code(), Some(2));
}

fn csv_columns(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    (header, rows)
}

#[test]
fn simulate_writes_csv_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run.csv");
    let o = ants(&["simulate", "--rule", "b", "--u0", "1/4,1/4,-1/2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_columns(&fs::read_to_string(&out).unwrap());
    let k = header.iter().position(|h| h == "inv_prod").unwrap();
    let p0 = rows[0][k];
    assert!(rows.iter().all(|r| (r[k] - p0).abs() < 1e-8));
    assert_eq!(rows.len(), 10_001);
    let manifest: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("run.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 1);
    assert!(manifest["drift"]["inv_prod"].as_f64().unwrap() < 1e-8);

    let again = dir.path().join("again.csv");
    ants(&["simulate", "--rule", "b", "--u0", "1/4,1/4,-1/2", "--out", again.to_str().unwrap()]);
    assert_eq!(fs::read(&out).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn zero_controls_stay_put() {
    let o = ants(&["simulate", "--u0", "0,0,0", "--duration", "0.1", "--step", "0.01"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_columns(&stdout(&o));
    let q = 1..7;
    let u: Vec<usize> = ["u1", "u2", "u3"].iter().map(|n| header.iter().position(|h| h == n).unwrap()).collect();
    for r in &rows {
        assert_eq!(r[q.clone()], rows[0][q.clone()]);
        assert!(u.iter().all(|&i| r[i] == 0.0));
    }
}

#[test]
fn bad_covector_fails_before_integration() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("bad.csv");
    let o = ants(&["simulate", "--lambda-target", "1,0,0,0,0,0", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("annihilator"));
    assert!(!out.exists());
}

#[test]
fn blow_up_is_an_error() {
    let o = ants(&["simulate", "--u0", "1,1,-2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("blow up"));
}

#[test]
fn fixed_vertex_preset() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fv.csv");
    let o = ants(&["simulate", "--preset", "fixed-vertex", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let m: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("fv.manifest.json")).unwrap()).unwrap();
    assert!(m["parallel_side"].as_f64().unwrap() < 1e-8);
    assert!(m["stationary_vertex"].as_f64().unwrap() < 1e-9);
}

#[test]
fn quartic_and_ellipse() {
    for c in ["1", "-1", "7/3", "-7/3"] {
        let j: Value = serde_json::from_str(&stdout(&ants(&["quartic", "--cartan", c]))).unwrap();
        assert_eq!(j["tag"], "no_real");
    }
    let j: Value = serde_json::from_str(&stdout(&ants(&["quartic", "--coeffs", "1,0,-5,0,4"]))).unwrap();
    assert_eq!(j["tag"], "four_distinct_real");
    let e: Value = serde_json::from_str(&stdout(&ants(&["ellipse", "--triangle", "0,0,1,0,0,1", "--speed", "1,-1,0"]))).unwrap();
    assert_eq!(e["conic"], serde_json::json!(["1", "1", "1", "-1", "-1", "0"]));
    assert!((e["speed"].as_f64().unwrap() - 6.0).abs() < 1e-12);
    assert_eq!(ants(&["ellipse", "--triangle", "0,0,1,1,2,2"]).status.code(), Some(2));
}
