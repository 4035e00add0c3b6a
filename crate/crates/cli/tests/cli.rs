use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn difforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_difforge")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("json output")
}

#[test]
fn verify_catalog_df() {
    let o = difforge(&["verify", "catalog://df/63x41-8"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = difforge(&["verify", "catalog://aut/31-6-1-order5", "--format", "json"]);
    assert_eq!(json(&o)["ok"], true);
}

#[test]
fn qbound_at_d_one() {
    let o = difforge(&["qbound", "--d", "1", "--m", "7"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "7");
    let o = difforge(&["qbound", "--d", "6", "--m", "4", "--format", "json"]);
    assert_eq!(json(&o)["u"], "3025");
    assert_eq!(code(&difforge(&["qbound", "--d", "0", "--m", "4"])), 2);
}

#[test]
fn ooc_81_9_is_fully_explored() {
    let o = difforge(&["search", "ooc", "--v", "81", "--k", "9"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("fully explored"));
}

#[test]
fn budget_exhaustion_is_unknown() {
    let o = Command::new(env!("CARGO_BIN_EXE_difforge"))
        .args(["search", "ooc", "--v", "81", "--k", "9"])
        .env("DIFFORGE_NODE_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let o = difforge(&["search", "df", "--group", "Z5,F13", "--k", "6", "--budget", "10"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn search_finds_small_objects() {
    let o = difforge(&["search", "ooc", "--v", "63", "--k", "8", "--format", "json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["result"], serde_json::json!([0, 1, 3, 7, 15, 20, 31, 41]));
    let o = difforge(&["search", "df", "--group", "Z13", "--k", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&difforge(&["search", "df", "--group", "Q7", "--k", "3"])), 2);
}

#[test]
fn every_catalog_entry_exports_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let list = json(&difforge(&["catalog", "list", "--format", "json"]));
    let ids: Vec<&str> = list.as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
    assert!(ids.len() > 50);
    for id in ids {
        let o = difforge(&["verify", &format!("catalog://{id}")]);
        assert_eq!(code(&o), 0, "{id}: {}", stdout(&o));
        let path = dir.path().join(id.replace('/', "_"));
        let o = difforge(&["catalog", "export", id, "--out", path.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        let kind = &list.as_array().unwrap().iter().find(|e| e["id"] == id).unwrap()["kind"];
        if !matches!(kind.as_str(), Some("automorphism" | "primitive_poly")) {
            let o = difforge(&["verify", path.to_str().unwrap()]);
            assert_eq!(code(&o), 0, "{id}: {}", stdout(&o));
        }
    }
}

fn tamper(src: &Path, dst: &Path) {
    let text = std::fs::read_to_string(src).unwrap();
    let mut f: Value = serde_json::from_str(&text).unwrap();
    let first = &mut f["blocks"][0][1][0];
    *first = Value::from(first.as_i64().unwrap() + 1);
    std::fs::write(dst, f.to_string()).unwrap();
}

#[test]
fn tampered_and_malformed_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("df.json");
    let bad = dir.path().join("bad.json");
    assert_eq!(code(&difforge(&["catalog", "export", "df/30x7-6", "--out", good.to_str().unwrap()])), 0);
    tamper(&good, &bad);
    let o = difforge(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
    std::fs::write(&bad, "{\"kind\": \"df\"").unwrap();
    assert_eq!(code(&difforge(&["verify", bad.to_str().unwrap()])), 2);
    assert_eq!(code(&difforge(&["verify", "catalog://df/none"])), 2);
    assert_eq!(code(&difforge(&["verify", "/nonexistent/file.json"])), 2);
    assert_eq!(code(&difforge(&["catalog", "show", "nope"])), 2);
}

#[test]
fn export_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    assert_eq!(code(&difforge(&["catalog", "export", "sdf/z30-6-6", "--out", a.to_str().unwrap()])), 0);
    let text = std::fs::read_to_string(&a).unwrap();
    let o = difforge(&["catalog", "export", "sdf/z30-6-6"]);
    assert_eq!(stdout(&o), text);
}

#[test]
fn lift_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("df.json");
    let o = difforge(&["lift", "--sdf", "sdf/z10-5-12", "--q", "13", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert_eq!(code(&difforge(&["verify", out.to_str().unwrap()])), 0);
    let o = difforge(&["lift", "--sdf", "sdf/z30-6-6", "--q", "25", "--p", "5", "--e", "2", "--modulus", "2,-1,1"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = difforge(&["lift", "--sdf", "sdf/z63-8-8", "--q", "41"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("UNSAT"));
    assert_eq!(code(&difforge(&["lift", "--sdf", "sdf/z10-5-12", "--q", "11"])), 2);
}

#[test]
fn construct_commands() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    for (args, file) in [
        (vec!["construct", "paley1", "--p", "13"], "p1.json"),
        (vec!["construct", "paley2", "--p", "11"], "p2.json"),
        (vec!["construct", "paley3", "--p", "9"], "p3.json"),
        (vec!["construct", "twinprime", "--p", "5"], "t.json"),
        (vec!["construct", "singer", "--p", "3", "--d", "3"], "s.json"),
        (vec!["construct", "z4-4-6p", "--p", "7"], "z.json"),
        (vec!["construct", "gdd-dev", "--df", "catalog://df/2x41-5"], "gdd.json"),
        (
            vec!["construct", "ooc-compose", "--df", "catalog://df/35x7-6", "--filler", "catalog://ooc/filler-35-6"],
            "ooc.json",
        ),
        (vec!["construct", "rotational-bibd", "--q", "7", "--r", "10"], "rb.json"),
    ] {
        let path = p(file);
        let mut args = args.clone();
        args.extend(["--out", &path]);
        let o = difforge(&args);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
        let o = difforge(&["verify", &path]);
        assert_eq!(code(&o), 0, "{args:?}: {}", stdout(&o));
    }
    assert_eq!(code(&difforge(&["construct", "paley2", "--p", "5"])), 2);
    let o = difforge(&["construct", "paley1", "--p", "5", "--format", "json"]);
    assert_eq!(json(&o)["file"]["blocks"], serde_json::json!([[[0], [1], [1], [4], [4]]]));
}

#[test]
fn fixperm_command() {
    let o = difforge(&["fixperm", "--r", "6", "--a", "2", "--alpha", "(0 1 2 3 4 5)", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let pi: Vec<i64> = serde_json::from_value(json(&o)["pi"].clone()).unwrap();
    for x in 0..6 {
        assert_ne!((pi[(x + 1) % 6] - pi[x]).rem_euclid(6), 2);
    }
    assert_eq!(code(&difforge(&["fixperm", "--r", "4", "--a", "1", "--alpha", "(0 1)"])), 2);
    assert_eq!(code(&difforge(&["fixperm", "--r", "5", "--a", "1", "--alpha", "(0 9)"])), 2);
}
