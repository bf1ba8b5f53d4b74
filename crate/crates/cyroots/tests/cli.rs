use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_cyroots");

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(BIN).args(args).env("CYROOTS_CACHE_DIR", cache).output().expect("binary runs")
}

fn without_timing(report: &str) -> String {
    report.lines().filter(|l| !l.contains("elapsed_ms")).collect::<Vec<_>>().join("\n")
}

fn gen_kronecker(dir: &Path, cache: &Path, name: &str, eps: &str) -> (String, String) {
    let out = dir.join(name);
    let o = run(cache, &["gen", "kronecker", "--s", "0", "--eps", eps, "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    (out.join("algebra.json").display().to_string(), out.join("bimodule.json").display().to_string())
}

#[test]
fn check_root_pair_reports_and_caches() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().join("cache");
    let (alg, bim) = gen_kronecker(tmp.path(), &cache, "plus", "+1");
    let args = ["check-root-pair", "--algebra", &alg, "--bimodule", &bim, "--a", "2", "--d", "1", "--e", "0"];
    let first = run(&cache, &args);
    assert_eq!(first.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(report["schema"], "cyroots-report/1");
    assert_eq!(report["job"]["seed"], 1);
    for c in report["checks"].as_array().unwrap() {
        assert_eq!(c["passed"], true, "{}", c);
    }
    assert!(String::from_utf8_lossy(&first.stderr).contains("cache miss"));

    let second = run(&cache, &args);
    assert!(String::from_utf8_lossy(&second.stderr).contains("cache hit"));
    let a = without_timing(&String::from_utf8_lossy(&first.stdout));
    assert_eq!(a, without_timing(&String::from_utf8_lossy(&second.stdout)));

    std::fs::remove_dir_all(&cache).unwrap();
    let third = run(&cache, &args);
    assert!(String::from_utf8_lossy(&third.stderr).contains("cache miss"));
    assert_eq!(a, without_timing(&String::from_utf8_lossy(&third.stdout)));

    // ε = −1 at s = 0 is not cyclically invariant; a fresh key, never a stale hit
    let (alg, bim) = gen_kronecker(tmp.path(), &cache, "minus", "-1");
    let o = run(&cache, &["check-root-pair", "--algebra", &alg, "--bimodule", &bim, "--a", "2", "--d", "1", "--e", "0"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("cache miss"));
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let ci = report["checks"].as_array().unwrap().iter().find(|c| c["name"] == "cyclic-invariance").unwrap();
    assert_eq!(ci["passed"], false);
}

#[test]
fn complete_emits_hilbert_csv() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = tmp.path().join("cache");
    let (alg, bim) = gen_kronecker(tmp.path(), &cache, "k", "1");
    let csv = tmp.path().join("h.csv");
    let rep = tmp.path().join("r.json");
    let o = run(
        &cache,
        &["complete", "--algebra", &alg, "--bimodule", &bim, "--adams-max", "6", "--e", "0", "--csv", csv.to_str().unwrap(), "--report", rep.to_str().unwrap()],
    );
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let dims: Vec<usize> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap().parse().unwrap()).collect();
    assert_eq!(dims, vec![1, 2, 3, 4, 5, 6, 7]);
    assert!(text.lines().skip(1).all(|l| l.split(',').nth(1) == Some("0")));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(r["data"]["concentrated_in_0"], true);
}

#[test]
fn fold_writes_dot() {
    let tmp = tempfile::tempdir().unwrap();
    let dot = tmp.path().join("out.dot");
    let o = run(tmp.path(), &["fold", "--type", "A", "--rank", "4", "--a", "2", "--window", "12", "--dot", dot.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["data"]["vertices"], 12);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    let in_domain = text.split("subgraph cluster_domain").nth(1).unwrap().split('}').next().unwrap();
    assert_eq!(in_domain.matches("[label=").count(), 12);

    let o = run(tmp.path(), &["fold", "--type", "D", "--rank", "4", "--a", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn input_errors_exit_three() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = tmp.path().join("bad.json");
    std::fs::write(&bad, "{\"vertices\": [").unwrap();
    let b = bad.to_str().unwrap();
    let o = run(tmp.path(), &["check-root-pair", "--algebra", b, "--bimodule", b, "--a", "2", "--d", "1", "--e", "0"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("parse error"));
    assert_eq!(run(tmp.path(), &["fold", "--rank", "2"]).status.code(), Some(3));
    assert_eq!(run(tmp.path(), &["classify", "--type", "A", "--rank", "3", "--a", "2", "--field", "6"]).status.code(), Some(3));
}

#[test]
fn classify_reports_existence() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(tmp.path(), &["classify", "--type", "A", "--rank", "6", "--a", "2"]);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["data"]["exists"], true);
    let o = run(tmp.path(), &["classify", "--type", "A", "--rank", "5", "--a", "2"]);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["data"]["exists"], false);
}
