use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn holonomy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holonomy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout)
        .unwrap_or_else(|e| panic!("bad json ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn check_names(report: &Value) -> Vec<String> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

fn failed(report: &Value) -> Vec<String> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

fn cache_file(dir: &Path) -> std::path::PathBuf {
    fs::read_dir(dir)
        .unwrap()
        .next()
        .expect("one cache file")
        .unwrap()
        .path()
}

#[test]
fn build_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = holonomy(&["build", "--cache-dir", d, "--json"]);
    assert_eq!(code(&first), 0, "{}", stderr(&first));
    let r1 = json(&first);
    assert_eq!(r1["cache"], "built");
    assert_eq!(r1["payload"]["dims"], serde_json::json!([133, 56]));
    assert_eq!(r1["payload"]["roots"], 126);
    let bytes = fs::read(cache_file(dir.path())).unwrap();

    let second = holonomy(&["build", "--cache-dir", d, "--json"]);
    assert_eq!(code(&second), 0);
    let r2 = json(&second);
    assert_eq!(r2["cache"], "hit");
    assert_eq!(r1["payload"], r2["payload"]);
    assert_eq!(r1["checks"], r2["checks"]);
    assert_eq!(fs::read(cache_file(dir.path())).unwrap(), bytes);
}

#[test]
fn corrupted_cache_is_rebuilt_with_warning() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "build",
        "--algebra",
        "A5",
        "--node",
        "3",
        "--cache-dir",
        d,
        "--json",
    ];
    let clean = json(&holonomy(&args));
    let path = cache_file(dir.path());
    let good = fs::read(&path).unwrap();
    fs::write(&path, &good[..good.len() / 2]).unwrap();

    let o = holonomy(&args);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("warning"), "{}", stderr(&o));
    let r = json(&o);
    assert_eq!(r["cache"], "rebuilt");
    assert_eq!(r["payload"], clean["payload"]);
    assert_eq!(fs::read(&path).unwrap(), good);
}

#[test]
fn verify_requires_a_build() {
    let dir = tempfile::tempdir().unwrap();
    let o = holonomy(&["verify", "--cache-dir", dir.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("holonomy build"), "{}", stderr(&o));
}

#[test]
fn verify_unreadable_cache_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    holonomy(&["build", "--algebra", "A5", "--node", "3", "--cache-dir", d]);
    fs::write(cache_file(dir.path()), "{").unwrap();
    let o = holonomy(&["verify", "--algebra", "A5", "--node", "3", "--cache-dir", d]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("holonomy build"));
}

#[test]
fn verify_all_suites_on_a_small_model() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    holonomy(&["build", "--algebra", "A5", "--node", "3", "--cache-dir", d]);
    let o = holonomy(&[
        "verify",
        "--algebra",
        "A5",
        "--node",
        "3",
        "--cache-dir",
        d,
        "--json",
        "--seed",
        "3",
    ]);
    let r = json(&o);
    assert_eq!(code(&o), 0, "{:?}", failed(&r));
    assert_eq!(r["seed"], 3);
    for suite in ["invariants", "curvature", "bbw", "poisson"] {
        assert!(
            check_names(&r).iter().any(|n| n.starts_with(suite)),
            "{suite}"
        );
    }
    assert_eq!(r["payload"]["poisson"]["tau0"]["seed"], 3);
}

#[test]
fn verify_single_suite_only_runs_that_suite() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    holonomy(&["build", "--cache-dir", d]);
    let o = holonomy(&["verify", "--suite", "bbw", "--cache-dir", d, "--json"]);
    let r = json(&o);
    assert_eq!(code(&o), 0, "{:?}", failed(&r));
    assert!(check_names(&r).iter().all(|n| n.starts_with("bbw:")));
    assert_eq!(r["payload"].as_object().unwrap().len(), 1);
}

#[test]
fn corrupted_phi_fails_jacobi() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    holonomy(&["build", "--algebra", "A5", "--node", "3", "--cache-dir", d]);
    let base = [
        "verify",
        "--suite",
        "poisson",
        "--algebra",
        "A5",
        "--node",
        "3",
        "--cache-dir",
        d,
        "--json",
    ];
    let o = holonomy(&[&base[..], &["--corrupt-phi"]].concat());
    assert_eq!(code(&o), 1);
    let r = json(&o);
    assert!(failed(&r).contains(&"poisson: tau=0 jacobi".to_string()));
    assert!(!r["payload"]["poisson"]["tau0"]["witness_points"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn oracle_defaults_pass() {
    let o = holonomy(&["oracle", "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    let entries = r["payload"]["oracles"].as_array().unwrap();
    let names: Vec<&str> = entries
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["sl2-sym1", "sl2-sym2", "sl2-sym3", "so3", "so4"]);
    assert!(entries.iter().all(|e| e["status"] == "pass"));
    assert_eq!(entries[3]["data"]["prolongation_dim"], 0);
    assert_eq!(entries[2]["data"]["curvature_dim"], 8);
    assert_eq!(entries[2]["data"]["h1_sym3"], 8);
}

#[test]
fn empty_oracle_list_is_an_empty_pass() {
    let o = holonomy(&["oracle", "--oracles", "", "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert!(r["checks"].as_array().unwrap().is_empty());
    assert!(r["payload"]["oracles"].as_array().unwrap().is_empty());
}

#[test]
fn oracle_cap_refusal_is_named() {
    let o = holonomy(&["oracle", "--oracles", "so3,so4", "--caps", "20"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("so4"));
}

#[test]
fn bbw_tables() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let mut dims = Vec::new();
    for k in ["1", "2", "3"] {
        let args = [
            "bbw",
            "--algebra",
            "E7",
            "--node",
            "7",
            "--bundle",
            "L*S^kN",
            "--k",
            k,
            "--cache-dir",
            d,
            "--json",
        ];
        let o = holonomy(&args);
        assert_eq!(code(&o), 0);
        let r = json(&o);
        let by_degree: Vec<(u64, u64)> = r["payload"]["cohomology"]["degrees"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| (x["degree"].as_u64().unwrap(), x["dim"].as_u64().unwrap()))
            .collect();
        dims.push(by_degree);
        if k == "1" {
            let summands = &r["payload"]["cohomology"]["degrees"][0]["summands"];
            assert_eq!(
                summands[1]["weight"],
                serde_json::json!([1, 0, 0, 0, 0, 0, 0])
            );
            assert_eq!(summands[1]["dim"], 133);
        }
    }
    assert_eq!(dims, [vec![(0, 134)], vec![], vec![(1, 133)]]);
}

#[test]
fn poisson_report_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = [
        "poisson",
        "--algebra",
        "A5",
        "--node",
        "3",
        "--tau",
        "-1/3",
        "--points",
        "5",
        "--seed",
        "11",
        "--check",
        "jacobi,rank,u0",
        "--cache-dir",
        d,
        "--json",
    ];
    let a = holonomy(&args);
    let b = holonomy(&args);
    assert_eq!(code(&a), 0);
    let (ra, rb) = (json(&a), json(&b));
    assert_eq!(ra["payload"], rb["payload"]);
    assert_eq!(ra["checks"], rb["checks"]);
    let p = &ra["payload"];
    assert_eq!(p["seed"], 11);
    assert_eq!(p["points"], 5);
    assert_eq!(p["tau"], serde_json::json!({"n": "-1", "d": "3"}));
    let rank = p["generic_rank"].as_u64().unwrap();
    assert_eq!(rank % 2, 0);
    assert_eq!(p["symmetry_dim"].as_u64().unwrap(), 55 - rank);
    assert!(!p["witness_points"].as_array().unwrap().is_empty());
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reports/oracle.json");
    let o = holonomy(&[
        "oracle",
        "--oracles",
        "so3",
        "--json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let written: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(written, json(&o));
}

#[test]
fn curvature_spaces() {
    let o = holonomy(&["curvature", "--oracle", "so4", "--space", "k", "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["payload"]["computed_dim"], 20);
    assert_eq!(r["payload"]["method"], "bruteforce");

    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = holonomy(&[
        "curvature",
        "--algebra",
        "A5",
        "--node",
        "3",
        "--space",
        "k1",
        "--cache-dir",
        d,
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["payload"]["computed_dim"], 20);
    assert_eq!(r["payload"]["method"], "formula");
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(code(&holonomy(&["poisson", "--check", "bogus"])), 2);
    assert_eq!(code(&holonomy(&["poisson", "--tau", "x/y"])), 2);
    assert_eq!(code(&holonomy(&["bbw", "--bundle", "TX", "--k", "1"])), 2);
    assert_eq!(code(&holonomy(&["bbw", "--k", "4"])), 2);
    assert_eq!(code(&holonomy(&["oracle", "--caps", "0"])), 2);
    assert_eq!(code(&holonomy(&["oracle", "--oracles", "su3"])), 2);
    assert_eq!(code(&holonomy(&["build", "--algebra", "Q9"])), 2);
    assert_eq!(code(&holonomy(&["frobnicate"])), 2);
}
