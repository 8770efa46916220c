//! End-to-end tests of the `homzeros` binary: output shapes, exit codes,
//! determinism and the search cache.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn homzeros(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homzeros"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn bound_reports_values_with_provenance() {
    let rows = json_of(&homzeros(&["bound", "--q", "3", "--d", "2", "--m", "2"]));
    let values: Vec<u64> = rows.as_array().unwrap().iter().map(|r| r["value"].as_u64().unwrap()).collect();
    assert_eq!(values, [7, 5, 4, 2, 1, 0]);
    assert_eq!(rows[0]["theorem"], "thm:SerreSorr");
    assert!(rows.as_array().unwrap().iter().all(|r| r["status"] == "exact"));

    let rows = json_of(&homzeros(&["bound", "--q", "4", "--d", "3", "--m", "2", "--r", "1..=6"]));
    let values: Vec<u64> = rows.as_array().unwrap().iter().map(|r| r["value"].as_u64().unwrap()).collect();
    assert_eq!(values, [13, 10, 9, 7, 6, 5]);
    assert_eq!(rows[1]["theorem"], "thm:main");
}

#[test]
fn bound_csv_has_header_and_rows() {
    let out = homzeros(&["bound", "--q", "3", "--d", "2", "--m", "2", "--r", "1..2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "q,d,m,r,value,status,theorem,lower,upper");
    assert_eq!(lines[1], "3,2,2,1,7,exact,thm:SerreSorr,,");
    assert_eq!(lines.len(), 3);
}

#[test]
fn table_markdown_lists_every_rank() {
    let out = homzeros(&["table", "--q", "2", "--d", "2", "--m", "2", "--format", "md"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| r | d=2 |"));
    assert!(text.contains("| 6 | 0 |"));
}

#[test]
fn exhaustive_search_matches_dispatcher() {
    let doc = json_of(&homzeros(&["search", "--q", "3", "--d", "3", "--m", "2", "--r", "1", "--threads", "2"]));
    let result = &doc["results"][0];
    assert_eq!(result["max_count"], 10);
    assert_eq!(result["subspaces_examined"], 29524);
    assert_eq!(result["dispatcher"]["value"], 10);
    assert_eq!(result["bound_violations"].as_array().unwrap().len(), 0);
    assert_eq!(result["witness"]["rows"].as_array().unwrap().len(), 1);
}

#[test]
fn search_json_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["search", "--q", "3", "--d", "2", "--m", "2", "--r", "3"];
    let payload = |threads: &str| {
        let mut full = args.to_vec();
        full.extend(["--threads", threads]);
        serde_json::to_string(&json_of(&homzeros(&full))["results"]).unwrap()
    };
    let one = payload("1");
    assert_eq!(one, payload("1"));
    assert_eq!(one, payload("3"));

    let random = |threads: &str| {
        let out = homzeros(&[
            "search", "--mode", "random", "--iters", "20000", "--seed", "7", "--q", "3", "--d", "3", "--m", "2", "--r",
            "2", "--threads", threads,
        ]);
        serde_json::to_string(&json_of(&out)["results"]).unwrap()
    };
    assert_eq!(random("1"), random("2"));
}

#[test]
fn search_cache_is_reused() {
    let dir = scratch("search-cache");
    let args = ["search", "--q", "2", "--d", "2", "--m", "2", "--r", "2", "--cache-dir", dir.to_str().unwrap()];
    let first = json_of(&homzeros(&args));
    assert_eq!(first["meta"][0]["cached"], false);
    let files: Vec<_> = std::fs::read_dir(&dir).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second = json_of(&homzeros(&args));
    assert_eq!(second["meta"][0]["cached"], true);
    assert_eq!(first["results"], second["results"]);
}

#[test]
fn search_over_budget_exits_two() {
    let out = homzeros(&["search", "--q", "3", "--d", "3", "--m", "2", "--r", "2", "--budget", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn construct_then_count_roundtrips() {
    let dir = scratch("construct");
    let path = dir.join("family.json");
    let out = homzeros(&[
        "construct", "--family", "conj", "--q", "3", "--d", "3", "--m", "2", "--r", "3", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["count"], 7);
    assert_eq!(doc["certified"], true);
    assert_eq!(doc["target"]["value"], 7);

    let counted = json_of(&homzeros(&["count", path.to_str().unwrap()]));
    assert_eq!(counted["count"], 7);
    assert_eq!(counted["rank"], 3);
    assert_eq!(counted["projective"], true);
    assert_eq!(counted["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn construct_other_families() {
    for (args, count) in [
        (vec!["--family", "dq", "--q", "3", "--m", "2", "--r", "2"], 9),
        (vec!["--family", "hp", "--q", "3", "--d", "2", "--m", "2", "--r", "2"], 4),
        (vec!["--family", "linear", "--q", "3", "--m", "2", "--r", "1"], 4),
    ] {
        let mut full = vec!["construct"];
        full.extend(args);
        let doc = json_of(&homzeros(&full));
        assert_eq!(doc["count"], count, "{full:?}");
        assert_eq!(doc["certified"], true);
    }
}

#[test]
fn count_rejects_malformed_files() {
    let dir = scratch("count-bad");
    let empty = dir.join("empty.json");
    std::fs::write(
        &empty,
        r#"{"field":{"p":3,"e":1,"modulus":[0,1]},"nvars":3,"homogeneous":true,"degree":1,"polys":[]}"#,
    )
    .unwrap();
    assert_eq!(homzeros(&["count", empty.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(homzeros(&["count", dir.join("missing.json").to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn count_affine_file() {
    let dir = scratch("count-affine");
    let path = dir.join("affine.json");
    // x * y over F_3 in two variables vanishes on 5 affine points.
    std::fs::write(
        &path,
        r#"{"field":{"p":3,"e":1,"modulus":[0,1]},"nvars":2,"homogeneous":false,"degree":2,"polys":[[{"e":[1,1],"c":1}]]}"#,
    )
    .unwrap();
    let doc = json_of(&homzeros(&["count", path.to_str().unwrap()]));
    assert_eq!(doc["count"], 5);
    assert_eq!(doc["projective"], false);
}

#[test]
fn ghw_brute_force_agrees_and_writes_generator() {
    let dir = scratch("ghw");
    let csv = dir.join("generator.csv");
    let rows = json_of(&homzeros(&[
        "ghw", "--q", "3", "--d", "2", "--m", "2", "--brute-force", "--generator-out", csv.to_str().unwrap(),
    ]));
    let weights: Vec<u64> = rows.as_array().unwrap().iter().map(|r| r["brute_force"].as_u64().unwrap()).collect();
    assert_eq!(weights, [6, 8, 9, 11, 12, 13]);
    assert!(rows.as_array().unwrap().iter().all(|r| r["agrees"] == true && r["ghw"] == r["brute_force"]));
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.lines().all(|l| l.split(',').count() == 13));
}

#[test]
fn verify_suites_pass() {
    for suite in ["regimes", "combinat", "extremal"] {
        let doc = json_of(&homzeros(&["verify", "--suite", suite, "--q", "2..5", "--m", "3"]));
        assert!(doc.to_string().contains("\"checks\""), "{suite}");
    }
    let out = homzeros(&["verify", "--suite", "bounds", "--q", "3", "--d", "2", "--m", "2", "--iters", "500"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["bound"],
        vec!["bound", "--q", "6", "--d", "2", "--m", "2"],
        vec!["bound", "--q", "3", "--d", "2", "--m", "2", "--r", "7"],
        vec!["construct", "--family", "dq", "--q", "3", "--m", "2", "--r", "5"],
        vec!["frobnicate"],
        vec!["search", "--q", "3", "--d", "2"],
    ] {
        let out = homzeros(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}
