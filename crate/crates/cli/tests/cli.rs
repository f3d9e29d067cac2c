use std::path::PathBuf;
use std::process::{Command, Output};

use prisonforge::{canonical_form, Named};
use serde_json::Value;

fn prisonforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prisonforge"))
        .args(args)
        .env_remove("PRISONFORGE_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("prisonforge-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn analyze_petersen() {
    let out = prisonforge(&["analyze", "@petersen"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["girth"], 5);
    assert_eq!(v["result"]["nonHamiltonian"], true);
    assert_eq!(v["result"]["edgeConnectivity"], 3);
    assert_eq!(v["result"]["cyclicEdgeConnectivity"], 5);
    assert_eq!(
        v["result"]["report"]["hamiltonicity"]["verdict"],
        "NonHamiltonian"
    );
    assert_eq!(v["inputs"][0], "@petersen");
}

#[test]
fn reports_are_key_sorted_and_stable() {
    let a = prisonforge(&["analyze", "@heawood"]);
    let b = prisonforge(&["analyze", "@heawood"]);
    let strip = |o: &Output| {
        let mut v = json(o);
        v["timingMs"] = Value::Null;
        v
    };
    assert_eq!(strip(&a), strip(&b));
    let text = String::from_utf8(a.stdout).unwrap();
    let top: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    assert_eq!(top, ["command", "inputs", "result", "timingMs", "version"]);
    let mut keys = Vec::new();
    collect_keys(&json(&b), &mut keys);
    assert!(
        keys.iter().all(|k| !k.contains('_')),
        "snake_case key in {keys:?}"
    );
}

fn collect_keys(v: &Value, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                out.push(k.clone());
                collect_keys(inner, out);
            }
        }
        Value::Array(items) => items.iter().for_each(|i| collect_keys(i, out)),
        _ => {}
    }
}

#[test]
fn construct_bridge_on_k4s() {
    let out = prisonforge(&["construct", "bridge", "--input", "@k4", "--input", "@k4"]);
    assert!(out.status.success());
    let v = json(&out);
    let g6 = v["result"]["graph6"].as_str().unwrap();
    assert_eq!(prisonforge::parse_graph6(g6).unwrap().order(), 10);
    assert_eq!(v["result"]["claimsVerified"], true);
    assert_eq!(v["result"]["construction"]["report"]["edgeConnectivity"], 1);
}

#[test]
fn construct_with_explicit_edges_and_vertices() {
    let out = prisonforge(&[
        "construct",
        "two-bond",
        "--input",
        "@heawood",
        "--input",
        "@j7",
        "--edge",
        "0,1",
        "--edge",
        "0,1",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json(&out)["result"]["construction"]["report"]["order"], 42);
    let out = prisonforge(&[
        "construct",
        "three-edge",
        "--input",
        "@petersen",
        "--input",
        "@k4",
        "--vertex",
        "0",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(json(&out)["result"]["construction"]["report"]["order"], 30);
}

#[test]
fn construct_usage_errors_exit_one() {
    let out = prisonforge(&["construct", "bridge", "--input", "@k4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = prisonforge(&[
        "construct",
        "bridge",
        "--input",
        "@k4",
        "--input",
        "@k4",
        "--edge",
        "0,9",
        "--edge",
        "0,1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = prisonforge(&["analyze", "@nosuchgraph"]);
    assert_eq!(out.status.code(), Some(1));
    let out = prisonforge(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn generate_petersen() {
    let out = prisonforge(&["generate", "--n", "10", "--girth-min", "5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, [canonical_form(&Named::Petersen.graph()).graph6()]);
}

#[test]
fn generate_parts_cover_the_run() {
    let whole = prisonforge(&["generate", "--n", "12", "--girth-min", "3"]);
    let mut all: Vec<String> = String::from_utf8(whole.stdout)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(all.len(), 85);
    let tasks = prisonforge(&[
        "generate",
        "--n",
        "12",
        "--girth-min",
        "3",
        "--parts",
        "3",
        "--print-tasks",
    ]);
    let mut parts = Vec::new();
    for task in String::from_utf8(tasks.stdout).unwrap().lines() {
        let out = prisonforge(&["generate", "--task", task]);
        parts.extend(
            String::from_utf8(out.stdout)
                .unwrap()
                .lines()
                .map(String::from),
        );
    }
    all.sort();
    parts.sort();
    assert_eq!(all, parts);
    let count = prisonforge(&["generate", "--n", "12", "--girth-min", "3", "--count"]);
    assert_eq!(json(&count)["result"]["count"], 85);
}

#[test]
fn bounds() {
    let v = json(&prisonforge(&["bounds", "--girth", "5", "--conn", "1"]));
    assert_eq!(v["result"]["naiveBound"], 22);
    let out = prisonforge(&["bounds", "--girth", "5", "--conn", "4"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn search_prison_and_cap() {
    let dir = temp_dir("search");
    let out_file = dir.join("g3e2.json");
    let out = prisonforge(&[
        "search-prison",
        "--girth",
        "3",
        "--conn",
        "2",
        "--out",
        out_file.to_str().unwrap(),
        "--checkpoint-dir",
        dir.join("ckpt").to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["result"]["order"], 14);
    assert_eq!(v["result"]["prisons"].as_array().unwrap().len(), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("order 12"));
    let sidecar = std::fs::read_to_string(out_file.with_extension("g6")).unwrap();
    assert_eq!(sidecar.lines().count(), 2);

    let capped = prisonforge(&[
        "search-prison",
        "--girth",
        "3",
        "--conn",
        "2",
        "--cap",
        "12",
    ]);
    assert_eq!(capped.status.code(), Some(3));
    let gated = prisonforge(&["search-prison", "--girth", "6", "--conn", "3"]);
    assert_eq!(gated.status.code(), Some(1));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_table_from_records() {
    let dir = temp_dir("table");
    let file = dir.join("g5e3.json");
    let out = prisonforge(&[
        "search-prison",
        "--girth",
        "5",
        "--conn",
        "3",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = prisonforge(&["verify-table", "--records", file.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let cells = json(&out)["result"]["report"]["cells"]
        .as_array()
        .unwrap()
        .clone();
    let cell = cells.iter().find(|c| c["g"] == 5 && c["e"] == 3).unwrap();
    assert_eq!(cell["status"], "Match");

    // The same record filed under the wrong cell is a mismatch.
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    v["g"] = 4.into();
    let wrong = dir.join("wrong.json");
    std::fs::write(&wrong, v.to_string()).unwrap();
    let out = prisonforge(&["verify-table", "--records", wrong.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = prisonforge(&["check-conjectures", "--records", file.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["allHold"], true);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn catalog_commands() {
    let v = json(&prisonforge(&["catalog", "list"]));
    assert_eq!(v["result"].as_array().unwrap().len(), 11);
    let v = json(&prisonforge(&["catalog", "show", "coxeter"]));
    assert_eq!(v["result"]["order"], 28);
    assert_eq!(v["result"]["girth"], 7);
    let g = prisonforge::parse_graph6(v["result"]["graph6"].as_str().unwrap()).unwrap();
    assert!(prisonforge::are_isomorphic(&g, &Named::Coxeter.graph()));
}

#[test]
fn threads_env_fallback_is_accepted() {
    let out = Command::new(env!("CARGO_BIN_EXE_prisonforge"))
        .args(["search-prison", "--girth", "4", "--conn", "3"])
        .env("PRISONFORGE_THREADS", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(json(&out)["result"]["order"], 14);
}
