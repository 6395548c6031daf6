use std::path::Path;
use std::process::{Command, Output};

fn qaffine(home: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qaffine"))
        .args(args)
        .env("QAFFINE_HOME", home)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn qchar_text_and_cache() {
    let home = tempfile::tempdir().unwrap();
    let first = qaffine(home.path(), &["qchar", "--type", "A1", "--node", "1", "--shift", "0"]);
    assert!(first.status.success());
    assert_eq!(stdout(&first).trim(), "Y_{1,0} + Y_{1,2}^{-1}");
    let json1 = qaffine(home.path(), &["qchar", "--type", "B2", "--node", "1", "--format", "json"]);
    let json2 = qaffine(home.path(), &["qchar", "--type", "B2", "--node", "1", "--format", "json"]);
    assert_eq!(json1.stdout, json2.stdout);
    let fresh = qaffine(home.path(), &["qchar", "--type", "B2", "--node", "1", "--format", "json", "--no-cache"]);
    assert_eq!(json1.stdout, fresh.stdout);
    let log = std::fs::read_to_string(home.path().join("runs.log")).unwrap();
    assert!(log.contains("cache=hit"));
    assert_eq!(std::fs::read_dir(home.path().join("cache")).unwrap().count(), 2);
}

#[test]
fn exit_codes() {
    let home = tempfile::tempdir().unwrap();
    assert_eq!(qaffine(home.path(), &["qchar", "--type", "Q7", "--node", "1"]).status.code(), Some(2));
    assert_eq!(qaffine(home.path(), &["qchar", "--type", "A2", "--node", "5"]).status.code(), Some(2));
    assert_eq!(qaffine(home.path(), &["frobnicate"]).status.code(), Some(2));
    let budget = qaffine(home.path(), &["qchar", "--type", "E8", "--node", "1", "--budget", "10", "--no-cache"]);
    assert_eq!(budget.status.code(), Some(3));
    assert_eq!(qaffine(home.path(), &["xxz", "fit", "--N", "13"]).status.code(), Some(3));
    let no_chain = qaffine(
        home.path(),
        &["truncate", "chain", "--type", "B2", "--Z", "[[0],[]]", "--target", "[[],[0]]", "--max-depth", "1"],
    );
    assert_eq!(no_chain.status.code(), Some(1));
}

#[test]
fn relations_and_truncation() {
    let home = tempfile::tempdir().unwrap();
    let tq = qaffine(home.path(), &["relations", "tq", "--type", "A1", "--node", "1", "--omit-weights"]);
    assert_eq!(stdout(&tq).trim(), "[V_1(1)][L^+_{1,q}] = [L^+_{1,q^{-1}}] + [L^+_{1,q^{3}}]");
    let six = qaffine(home.path(), &["truncate", "enumerate", "--type", "B2", "--Z", "[[],[0]]"]);
    let v: serde_json::Value = serde_json::from_slice(&six.stdout).unwrap();
    assert_eq!(v["count"], 6);
    let chain = qaffine(
        home.path(),
        &["truncate", "chain", "--type", "B2", "--Z", "[[-6],[0,-2,-6]]", "--target", "[[0,-4,-6],[]]"],
    );
    assert!(chain.status.success());
    let v: serde_json::Value = serde_json::from_slice(&chain.stdout).unwrap();
    assert_eq!(v["found"], true);
}

#[test]
fn cluster_qgroth_and_xxz() {
    let home = tempfile::tempdir().unwrap();
    let a2 = qaffine(home.path(), &["cluster", "enumerate", "--seed", "a2"]);
    let v: serde_json::Value = serde_json::from_slice(&a2.stdout).unwrap();
    assert_eq!((v["variables"].as_u64(), v["clusters"].as_u64()), (Some(5), Some(5)));
    let l = qaffine(home.path(), &["qgroth", "canonical", "--shifts", "0,2"]);
    assert_eq!(stdout(&l).trim(), "(t)g_0g_2 + (-t)");
    let out = home.path().join("out.json");
    let fit = qaffine(home.path(), &["xxz", "fit", "--N", "3", "--u", "0.5", "--q", "0.7,0.1", "--json", out.to_str().unwrap()]);
    assert!(fit.status.success(), "{}", String::from_utf8_lossy(&fit.stderr));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert!(v["commutator"].as_f64().unwrap() < 1e-10);
}

#[test]
fn repro_is_deterministic() {
    let home = tempfile::tempdir().unwrap();
    let names = ["cartan-b2", "chi-tables", "qgroth-canonical-pair"];
    let mut args = vec!["repro"];
    args.extend(names);
    assert!(qaffine(home.path(), &args).status.success());
    let first: Vec<Vec<u8>> =
        names.iter().map(|n| std::fs::read(home.path().join("reports").join(format!("{n}.json"))).unwrap()).collect();
    assert!(qaffine(home.path(), &args).status.success());
    let second: Vec<Vec<u8>> =
        names.iter().map(|n| std::fs::read(home.path().join("reports").join(format!("{n}.json"))).unwrap()).collect();
    assert_eq!(first, second);
    assert_eq!(qaffine(home.path(), &["repro", "no-such-scenario"]).status.code(), Some(2));
    let list = qaffine(home.path(), &["repro", "--list"]);
    assert_eq!(stdout(&list).lines().count(), qaffine_cli::catalog().len());
}

#[test]
fn config_overrides_tolerances() {
    let home = tempfile::tempdir().unwrap();
    std::fs::write(home.path().join("config.json"), r#"{"chain_depth": 0}"#).unwrap();
    let chain = qaffine(
        home.path(),
        &["truncate", "chain", "--type", "B2", "--Z", "[[-6],[0,-2,-6]]", "--target", "[[0,-4,-6],[]]"],
    );
    assert_eq!(chain.status.code(), Some(1));
}
