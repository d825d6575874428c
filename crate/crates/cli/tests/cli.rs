use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use powerlab::suite::{replay, Finding, Statement, SuiteConfig, SuiteContext};
use powerlab::ClosureSteps;

const A2: &str = r#"{"labels": ["a","b"], "covers": []}"#;
const V: &str = r#"{"labels": ["a","b","t"], "covers": [["a","t"],["b","t"]]}"#;
const LAMBDA: &str = r#"{"labels": ["m","a","b"], "covers": [["m","a"],["m","b"]]}"#;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("powerlab-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn powerlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_powerlab")).args(args).env_remove("POWERLAB_CACHE").output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn gamma_of_a2() {
    let dir = scratch("gamma");
    let a2 = write(&dir, "a2.json", A2);
    let out = powerlab(&["gamma", &a2]);
    assert!(out.status.success());
    assert_eq!(json(&out)["members"].as_array().unwrap().len(), 3);
    let out = powerlab(&["gamma", &a2, "--with-empty"]);
    assert_eq!(json(&out)["members"].as_array().unwrap().len(), 4);
}

#[test]
fn hoare_of_v() {
    let dir = scratch("hoare");
    let v = write(&dir, "v.json", V);
    let out = powerlab(&["hoare", &v]);
    assert!(out.status.success());
    let h = json(&out);
    assert_eq!(h["count"], 4);
    assert_eq!(h["equals_gamma_c"], true);
    let dot = String::from_utf8(powerlab(&["hoare", &v, "--format", "dot"]).stdout).unwrap();
    assert!(dot.starts_with("digraph poset {"));
    assert!(dot.contains("\"{a,b}\" -> \"{a,b,t}\";"));
}

#[test]
fn vexist_witnesses() {
    let dir = scratch("vexist");
    let a2 = write(&dir, "a2.json", A2);
    let out = json(&powerlab(&["vexist", &a2, "--set", "a,b"]));
    assert_eq!(out["outcome"], "refuted");
    assert_eq!(out["verdict"], "NO_SUP");
    assert_eq!(out["canonical"], true);

    let lambda = write(&dir, "lambda.json", LAMBDA);
    assert_eq!(json(&powerlab(&["vexist", &lambda, "--set", "m,a,b"]))["verdict"], "NO_SUP");

    let v = write(&dir, "v.json", V);
    let out = json(&powerlab(&["vexist", &v, "--set", "a,b,t", "--max-l", "4"]));
    assert_eq!(out["outcome"], "not_found");
    assert_eq!(out["bound"], 4);
}

#[test]
fn gammaf_and_join_table() {
    let dir = scratch("gammaf");
    let v = write(&dir, "v.json", V);
    let out = json(&powerlab(&["gammaf", &v]));
    assert_eq!(out["count"], 4);
    let csv = String::from_utf8(powerlab(&["gammaf", &v, "--format", "csv"]).stdout).unwrap();
    assert_eq!(csv, ",a,b,t\na,a,t,t\nb,t,b,t\nt,t,t,t\n");
    let out = json(&powerlab(&["gammaf", &v, "--hoare"]));
    assert_eq!(out["count"], 5);
}

#[test]
fn input_errors_exit_2() {
    let dir = scratch("errors");
    let cases = [
        ("bad.json", "{\"labels\": [", vec!["hoare"]),
        ("cycle.json", r#"{"labels":["a","b"],"covers":[["a","b"],["b","a"]]}"#, vec!["hoare"]),
        ("dup.json", r#"{"labels":["a","a"],"covers":[]}"#, vec!["gamma"]),
        ("a2.json", A2, vec!["vexist", "--set", "a,q"]),
        ("a2b.json", A2, vec!["vexist", "--set", "a,b", "--max-l", "9"]),
        (
            "w.json",
            r#"{"labels":["a","b","c","d"],"covers":[["a","c"],["a","d"],["b","c"],["b","d"]]}"#,
            vec!["gammaf"],
        ),
    ];
    let mut messages = Vec::new();
    for (name, text, args) in cases {
        let path = write(&dir, name, text);
        let mut full = vec![args[0], path.as_str()];
        full.extend(&args[1..]);
        let out = powerlab(&full);
        assert_eq!(out.status.code(), Some(2), "{name}");
        messages.push(String::from_utf8(out.stderr).unwrap());
    }
    messages.sort();
    messages.dedup();
    assert_eq!(messages.len(), 6);
    assert_eq!(powerlab(&["enumerate", "--n", "7"]).status.code(), Some(2));
    assert_eq!(powerlab(&["verify", "--suite", "thm9.9"]).status.code(), Some(2));
    assert_eq!(powerlab(&["verify", "--max-poset", "0"]).status.code(), Some(2));
}

#[test]
fn enumerate_lines_and_cache() {
    let out = powerlab(&["enumerate", "--n", "4"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 16);
    for l in text.lines() {
        let v: Value = serde_json::from_str(l).unwrap();
        assert_eq!(v["n"], 4);
    }
    let semis = String::from_utf8(powerlab(&["enumerate", "--n", "4", "--semilattices"]).stdout).unwrap();
    assert!(semis.lines().count() < 16);

    let dir = scratch("cache");
    let cache = dir.join("c");
    let first = powerlab(&["enumerate", "--n", "4", "--cache", cache.to_str().unwrap()]);
    assert!(cache.join("posets-4.bin").exists());
    let second = powerlab(&["enumerate", "--n", "4", "--cache", cache.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(first.stdout, text.as_bytes());

    fs::write(cache.join("posets-4.bin"), b"garbage").unwrap();
    let third = powerlab(&["enumerate", "--n", "4", "--cache", cache.to_str().unwrap()]);
    assert_eq!(third.stdout, text.as_bytes());

    let env_dir = dir.join("env");
    let out = Command::new(env!("CARGO_BIN_EXE_powerlab"))
        .args(["enumerate", "--n", "3"])
        .env("POWERLAB_CACHE", &env_dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(env_dir.join("posets-3.bin").exists());
}

#[test]
fn verify_is_deterministic() {
    let dir = scratch("verify");
    let a = dir.join("a.json");
    let b = dir.join("b.json");
    for out in [&a, &b] {
        let o = powerlab(&["verify", "--suite", "thm3.10,cor3.11", "--no-timing", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let report: Value = serde_json::from_slice(&fs::read(&a).unwrap()).unwrap();
    let reports = report["reports"].as_array().unwrap();
    assert_eq!(reports[0]["statement"], "Thm3.10");
    assert_eq!(reports[0]["bound"]["max_poset"], 5);
    assert_eq!(reports[0]["instances"], 87);
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = scratch("config");
    let cfg = write(&dir, "c.toml", "max_poset = 3\nsuites = [\"thm3.10\"]\ntiming = false\n");
    let out = powerlab(&["verify", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["reports"][0]["bound"]["max_poset"], 3);
    assert_eq!(report["reports"][0]["wall_ms"], 0);
    let out = powerlab(&["verify", "--config", &cfg, "--max-poset", "2"]);
    assert_eq!(json(&out)["reports"][0]["instances"], 3);

    let bad = write(&dir, "bad.toml", "nonsense = 1\n");
    assert_eq!(powerlab(&["verify", "--config", &bad]).status.code(), Some(2));
}

#[test]
fn mutant_failures_replay() {
    let out = powerlab(&["verify", "--suite", "thm3.10", "--max-poset", "3", "--drop-step", "join", "--no-timing"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    let failures = report["reports"][0]["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    let config = SuiteConfig {
        max_poset: 3,
        steps: ClosureSteps { pair_join: false, ..ClosureSteps::ALL },
        ..SuiteConfig::default()
    };
    let ctx = SuiteContext::new(config).unwrap();
    for f in failures {
        let finding: Finding = serde_json::from_value(f.clone()).unwrap();
        assert!(replay(Statement::Thm3_10, &finding, &ctx).unwrap());
    }
}
