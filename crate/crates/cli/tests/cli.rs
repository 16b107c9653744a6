use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn dcp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcp"))
        .args(args)
        .env_remove("DCP_CACHE_DIR")
        .output()
        .expect("the binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn full_braid4_is_the_moduli_surface() {
    let o = dcp(&["full", &path("braid4.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("total: (Z, Z^4 + Z/2, 0)"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn verify_all_passes_on_braid4() {
    let o = dcp(&["verify", &path("braid4.json"), "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = dcp(&["verify", &path("braid4.json"), "--format", "json"]);
    let v = json(&o);
    let suites = v["suites"].as_array().unwrap();
    assert_eq!(suites.len(), 4);
    assert!(suites.iter().all(|s| s["passed"] == Value::Bool(true)));
}

#[test]
fn each_suite_runs_alone() {
    for suite in ["chain", "operad", "kunneth", "bockstein"] {
        let o = dcp(&[
            "verify",
            &path("nested_pair.json"),
            "--suite",
            suite,
            "--format",
            "json",
        ]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        let v = json(&o);
        assert_eq!(v["suites"][0]["name"], suite);
    }
}

#[test]
fn projective_three_space_json() {
    let o = dcp(&["homology", &path("rp3.json"), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["arrangement_key"].as_str().unwrap().len(), 64);
    let top = v["graded"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["subspace"] == "4:1,0,0,0;0,1,0,0;0,0,1,0;0,0,0,1")
        .expect("row for the whole dual space");
    assert_eq!(
        top["groups"],
        serde_json::json!([{"degree": 3, "rank": 1, "torsion": []}])
    );
}

#[test]
fn json_schema_of_graded_tables() {
    for cmd in ["homology", "mod2", "full", "poset"] {
        let o = dcp(&[cmd, &path("nested_pair.json"), "--format", "json"]);
        assert_eq!(o.status.code(), Some(0), "{cmd}");
        let v = json(&o);
        assert!(v["arrangement_key"].is_string());
        assert!(v["total"].is_array());
        for row in v["graded"].as_array().unwrap() {
            assert!(row["subspace"].is_string());
            assert!(row["dims"].as_array().unwrap().iter().all(Value::is_u64));
            for g in row["groups"].as_array().unwrap() {
                assert!(g["degree"].is_u64() && g["rank"].is_u64() && g["torsion"].is_array());
            }
        }
    }
}

#[test]
fn full_json_carries_torsion() {
    let o = dcp(&["full", &path("nested_pair.json"), "--format", "json"]);
    let total = json(&o)["total"].clone();
    assert_eq!(
        total,
        serde_json::json!([
            {"degree": 0, "rank": 1, "torsion": []},
            {"degree": 1, "rank": 1, "torsion": [2]},
            {"degree": 2, "rank": 0, "torsion": [2]},
            {"degree": 3, "rank": 0, "torsion": []}
        ])
    );
}

#[test]
fn gm_of_realified_a2() {
    let o = dcp(&["gm", &path("realified_a2.json"), "--format", "json"]);
    let ranks: Vec<u64> = json(&o)["total"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["rank"].as_u64().unwrap())
        .collect();
    assert_eq!(ranks, [1, 3, 2]);
}

#[test]
fn exit_codes() {
    assert_eq!(
        dcp(&["full", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"family": {"name": "braid", "n": 4, "extra": 1}}"#).unwrap();
    assert_eq!(dcp(&["full", bad.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&bad, r#"{"family": {"name": "braid", "n": 1}}"#).unwrap();
    assert_eq!(dcp(&["full", bad.to_str().unwrap()]).status.code(), Some(2));
    let o = dcp(&["full", &path("braid5.json"), "--max-lattice", "10"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(
        dcp(&["verify", &path("braid4.json"), "--suite", "nope"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_is_deterministic() {
    let p = path("braid5.json");
    for args in [
        vec!["full", p.as_str(), "--format", "json"],
        vec![
            "verify",
            p.as_str(),
            "--suite",
            "operad",
            "--format",
            "json",
            "--seed",
            "11",
        ],
    ] {
        let a = dcp(&args).stdout;
        let mut one = args.clone();
        one.extend(["--jobs", "1"]);
        let b = dcp(&one).stdout;
        let mut four = args.clone();
        four.extend(["--jobs", "4"]);
        let c = dcp(&four).stdout;
        assert!(!a.is_empty());
        assert_eq!(a, b);
        assert_eq!(a, c);
    }
}

#[test]
fn warm_cache_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let p = path("braid5.json");
    let cold = dcp(&["full", &p, "--format", "json"]).stdout;
    let first = dcp(&["full", &p, "--format", "json", "--cache", cache]).stdout;
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let warm = dcp(&["full", &p, "--format", "json", "--cache", cache]).stdout;
    assert_eq!(cold, first);
    assert_eq!(cold, warm);
    // the guard still applies to cached lattices
    let o = dcp(&["full", &p, "--cache", cache, "--max-lattice", "10"]);
    assert_eq!(o.status.code(), Some(3));
    // a corrupted entry is recomputed
    let entry = std::fs::read_dir(dir.path())
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    std::fs::write(&entry, "not json").unwrap();
    let again = dcp(&["full", &p, "--format", "json", "--cache", cache]).stdout;
    assert_eq!(cold, again);
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_dcp"))
        .args(["mod2", &path("braid4.json")])
        .env("DCP_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn closure_and_lattice_listings() {
    let v = json(&dcp(&["closure", &path("braid4.json"), "--format", "json"]));
    assert_eq!(v["elements"].as_array().unwrap().len(), 11);
    let v = json(&dcp(&["lattice", &path("braid4.json"), "--format", "json"]));
    let elements = v["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 15);
    let split = elements
        .iter()
        .filter(|e| e["components"].as_array().unwrap().len() == 2)
        .count();
    // the three pairings {12|34}, {13|24}, {14|23}
    assert_eq!(split, 3);
}
