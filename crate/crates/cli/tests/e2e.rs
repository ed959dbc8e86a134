use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const FOUR_AP: &str = "[[1, 0], [1, 1], [1, 2], [1, 3]]";

struct Run {
    code: i32,
    out: PathBuf,
    stderr: String,
}

impl Run {
    fn report(&self) -> Value {
        let text = fs::read_to_string(self.out.join("report.json")).expect("report.json written");
        serde_json::from_str(&text).unwrap()
    }
}

fn run_in(dir: &Path, command: &str, config: &str, extra: &[&str]) -> Run {
    let config_path = dir.join(format!("{command}-{}.json", extra.len()));
    fs::write(&config_path, config).unwrap();
    let out = dir.join(format!("out-{command}-{}", extra.join("-")));
    let output: Output = Command::new(env!("CARGO_BIN_EXE_multicommon"))
        .arg(command)
        .arg("--config")
        .arg(&config_path)
        .arg("--out")
        .arg(&out)
        .args(extra)
        .output()
        .unwrap();
    Run {
        code: output.status.code().unwrap(),
        out,
        stderr: String::from_utf8_lossy(&output.stderr).into_owned(),
    }
}

fn run(command: &str, config: &str) -> (TempDir, Run) {
    let dir = TempDir::new().unwrap();
    let r = run_in(dir.path(), command, config, &[]);
    (dir, r)
}

/// `t(A) + t(A^C)` for the 4-AP on `Z_p`, by direct enumeration of `(x, y)`.
fn four_ap_pair_oracle(p: usize, member: &[bool]) -> f64 {
    let mut mono = 0usize;
    for x in 0..p {
        for y in 0..p {
            let colors: Vec<bool> = (0..4).map(|k| member[(x + k * y) % p]).collect();
            if colors.iter().all(|&c| c) || colors.iter().all(|&c| !c) {
                mono += 1;
            }
        }
    }
    mono as f64 / (p * p) as f64
}

#[test]
fn analyze_uniform_is_at_threshold() {
    let (_d, r) = run(
        "analyze",
        &format!(r#"{{"group": {{"cyclic": {{"p": 5}}}}, "matrix": {FOUR_AP}, "function": "uniform:0.5"}}"#),
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rep = r.report();
    assert_eq!(rep["verdict"], "at-threshold");
    assert!((rep["results"]["pair_sum"].as_f64().unwrap() - 0.125).abs() < 1e-12);
    assert_eq!(rep["results"]["threshold"], 0.125);
    assert_eq!(rep["results"]["system"]["four_ap"]["quadruple"], serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn analyze_indicator_table() {
    let (_d, r) = run(
        "analyze",
        &format!(r#"{{"group": {{"cyclic": {{"p": 5}}}}, "matrix": {FOUR_AP}, "function": [0, 1, 1, 1, 1]}}"#),
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let res = &r.report()["results"];
    let expected = four_ap_pair_oracle(5, &[false, true, true, true, true]);
    assert!((expected - 9.0 / 25.0).abs() < 1e-15);
    assert!((res["pair_sum"].as_f64().unwrap() - expected).abs() < 1e-12);
    assert_eq!(res["parameters"], 25);
    assert_eq!(res["degenerate_parameters"], 5);
    assert_eq!(res["inequality"]["relation"], "above-threshold");
}

#[test]
fn analyze_three_forms_has_no_four_ap() {
    let (_d, r) = run(
        "analyze",
        r#"{"group": {"cyclic": {"p": 7}}, "matrix": [[1, 0], [1, 1], [1, 2]], "function": "uniform:0.25"}"#,
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.report()["results"]["system"]["four_ap"]["note"], "no 4-AP possible (d<4)");
}

#[test]
fn config_errors_exit_2() {
    let (_d, r) = run("analyze", r#"{"group": {"cyclic": {"p": 5}}, "matrx": [[1]]}"#);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("matrx"), "{}", r.stderr);
    let (_d, r) = run("analyze", "not json");
    assert_eq!(r.code, 2);
    let (_d, r) = run("verify", r#"{"command": "analyze", "options": {"suite": "gauss"}}"#);
    assert_eq!(r.code, 2);
    let (_d, r) = run(
        "analyze",
        &format!(r#"{{"group": {{"cyclic": {{"p": 5}}}}, "matrix": {FOUR_AP}, "function": "uniform:2"}}"#),
    );
    assert_eq!(r.code, 2);
}

#[test]
fn enumeration_cap_exits_3() {
    let (_d, r) = run(
        "analyze",
        &format!(
            r#"{{"group": {{"vector": {{"p": 5, "n": 3}}}}, "matrix": {FOUR_AP}, "function": "uniform:0.5",
                "options": {{"enumeration_cap": 1000}}}}"#
        ),
    );
    assert_eq!(r.code, 3, "{}", r.stderr);
    assert!(!r.out.join("report.json").exists());
}

#[test]
fn counterexample_four_ap_and_recipe_round_trip() {
    let dir = TempDir::new().unwrap();
    let r = run_in(
        dir.path(),
        "counterexample",
        &format!(r#"{{"group": {{"vector": {{"p": 5}}}}, "matrix": {FOUR_AP}}}"#),
        &[],
    );
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rep = r.report();
    assert!(rep["verdict"].as_str().unwrap().starts_with("uncommon at (p=5"));
    let margin = rep["results"]["margin"].as_f64().unwrap();
    assert!(margin > 0.0);
    let sweep = fs::read_to_string(r.out.join("sweep.csv")).unwrap();
    assert!(sweep.starts_with("p,n,alpha,beta,value,threshold,margin\n"));

    let recipe = r.out.join("recipe.json");
    assert!(recipe.exists());
    let again = run_in(
        dir.path(),
        "analyze",
        &format!(r#"{{"matrix": {FOUR_AP}, "function": {{"recipe": {}}}}}"#, Value::from(recipe.to_str().unwrap())),
        &[],
    );
    assert_eq!(again.code, 0, "{}", again.stderr);
    let reloaded = again.report()["results"]["margin"].as_f64().unwrap();
    assert!((reloaded - margin).abs() <= 1e-12, "{reloaded} vs {margin}");
}

#[test]
fn counterexample_negation_pair() {
    let (_d, r) = run("counterexample", r#"{"group": {"cyclic": {"p": 5}}, "matrix": [[1], [-1]]}"#);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let res = &r.report()["results"];
    assert_eq!(res["alpha"], 0.25);
    assert!((res["margin"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert!((res["value"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert_eq!(res["realization"]["rounding"]["certificate_holds"], true);
    for name in ["construction.json", "table.json", "rounded_set.json", "timing.json"] {
        assert!(r.out.join(name).exists(), "{name}");
    }
}

#[test]
fn counterexample_without_construction_exits_4() {
    let (_d, r) = run("counterexample", r#"{"group": {"cyclic": {"p": 5}}, "matrix": [[1, 0], [0, 1]]}"#);
    assert_eq!(r.code, 4);
    let (_d, r) = run(
        "counterexample",
        r#"{"group": {"cyclic": {"p": 5}}, "matrix": [[1], [-1], [1]], "options": {"round": true}}"#,
    );
    assert_eq!(r.code, 4);
    assert!(r.stderr.contains("distinct"), "{}", r.stderr);
}

#[test]
fn gauss_trivial_phase_is_excluded_by_hypothesis() {
    let base = r#""suite": "gauss", "primes": [5], "ns": [1], "include_trivial": true"#;
    let (_d, r) = run("verify", &format!(r#"{{"options": {{{base}}}}}"#));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let res = &r.report()["results"];
    assert_eq!(res["violation_count"], 0);
    let excluded = res["excluded"].as_array().unwrap();
    assert_eq!(excluded.len(), 5);
    assert!(excluded
        .iter()
        .all(|e| e["status"] == "excluded by hypothesis" && (e["lhs"].as_f64().unwrap() - 1.0).abs() < 1e-12));

    let (_d, r) = run("verify", &format!(r#"{{"options": {{{base}, "check_hypothesis": false}}}}"#));
    assert_eq!(r.code, 5);
    let res = &r.report()["results"];
    assert_eq!(res["violation_count"], 5);
    assert_eq!(res["violations"][0]["a"], 0);
    assert_eq!(res["violations"][0]["lhs"], 1.0);
}

#[test]
fn verify_suites_pass_at_small_scale() {
    for options in [
        r#"{"suite": "directional-sweep", "prime_range": [5, 60]}"#,
        r#"{"suite": "phase-vanish", "primes": [101], "fraction_bounds": [2], "trials": 50}"#,
        r#"{"suite": "muting-bounds", "primes": [5, 7], "ns": [2], "betas": [0.5]}"#,
        r#"{"suite": "cube", "groups": [[2], [3], [2, 2]], "trials": 20}"#,
        r#"{"suite": "splitting", "prime_range": [5, 50], "trials": 100}"#,
        r#"{"suite": "reparam", "primes": [5, 7], "trials": 30}"#,
    ] {
        let (_d, r) = run("verify", &format!(r#"{{"options": {options}}}"#));
        assert_eq!(r.code, 0, "{options}: {}", r.stderr);
        assert_eq!(r.report()["results"]["violation_count"], 0, "{options}");
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = TempDir::new().unwrap();
    let config = r#"{"options": {"suite": "cube", "groups": [[3], [2, 2]], "trials": 30}}"#;
    let a = run_in(dir.path(), "verify", config, &["--threads", "1"]);
    let b = run_in(dir.path(), "verify", config, &["--threads", "2"]);
    assert_eq!(a.code, 0);
    assert_eq!(fs::read(a.out.join("report.json")).unwrap(), fs::read(b.out.join("report.json")).unwrap());

    let config = &format!(r#"{{"group": {{"vector": {{"p": 5}}}}, "matrix": {FOUR_AP}}}"#);
    let a = run_in(dir.path(), "counterexample", config, &["--seed", "7"]);
    let b = run_in(dir.path(), "counterexample", config, &["--seed", "7", "--threads", "1"]);
    assert_eq!(fs::read(a.out.join("report.json")).unwrap(), fs::read(b.out.join("report.json")).unwrap());
    assert_eq!(fs::read(a.out.join("sweep.csv")).unwrap(), fs::read(b.out.join("sweep.csv")).unwrap());
}

#[test]
fn seed_changes_randomized_suites() {
    let dir = TempDir::new().unwrap();
    let config = r#"{"options": {"suite": "cube", "groups": [[3]], "trials": 5, "exhaustive_max_order": 0}}"#;
    let a = run_in(dir.path(), "verify", config, &["--seed", "1"]);
    let b = run_in(dir.path(), "verify", config, &["--seed", "2"]);
    assert_ne!(a.report()["results"]["groups"][0]["min_total"], b.report()["results"]["groups"][0]["min_total"]);
    assert_eq!(a.report()["environment"]["seed"], 1);
}

#[test]
fn min_coloring_matches_enumeration() {
    let (_d, r) = run("min-coloring", &format!(r#"{{"group": {{"cyclic": {{"p": 5}}}}, "matrix": {FOUR_AP}}}"#));
    assert_eq!(r.code, 0, "{}", r.stderr);
    let res = &r.report()["results"];
    let best = (0u32..32)
        .map(|mask| four_ap_pair_oracle(5, &(0..5).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>()))
        .fold(f64::INFINITY, f64::min);
    assert!((res["value"].as_f64().unwrap() - best).abs() < 1e-12);
}
