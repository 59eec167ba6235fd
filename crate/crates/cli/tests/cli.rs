use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_grassmin"));
    c.env_remove("GRASSMIN_FAULT");
    c
}

fn scripts() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/scripts")
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn script(id: &str) -> String {
    scripts().join(format!("{id}.gsl")).to_str().unwrap().to_string()
}

const LIGHT: [&str; 4] = ["T1.1-1", "T1.1-2", "T1.2-2", "T1.2-3"];

fn verify_json(jobs: &str) -> String {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("out.json");
    let mut args = vec!["verify", "--jobs", jobs, "--json", p.to_str().unwrap()];
    for id in LIGHT {
        args.extend(["--case", id]);
    }
    let o = run(&args);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    fs::read_to_string(p).unwrap()
}

#[test]
fn verify_json_is_byte_stable_across_runs_and_jobs() {
    let a = verify_json("1");
    assert_eq!(a, verify_json("3"));
    assert_eq!(a, verify_json("1"));
    let v: Value = serde_json::from_str(&a).unwrap();
    let ids: Vec<&str> = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, LIGHT);
}

#[test]
fn verify_orders_by_catalog_and_drops_repeats() {
    let o = run(&["verify", "--case", "T1.2-2", "--case", "T1.1-1", "--case", "T1.2-2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let a = out.find("T1.1-1").unwrap();
    let b = out.find("T1.2-2").unwrap();
    assert!(a < b);
    assert!(out.contains("2 cases: 2 passed, 0 failed"), "{out}");
}

#[test]
fn verify_single_case_json_schema() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t143.json");
    let o = run(&["verify", "--case", "T1.4-3", "--json", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    let c = &v["cases"][0];
    let keys: Vec<&str> = c.as_object().unwrap().keys().map(String::as_str).collect();
    for k in [
        "id",
        "N",
        "weights",
        "K",
        "B2",
        "lambda2",
        "ranks",
        "flags",
        "isotropy",
        "pass",
        "mismatches",
        "citation",
    ] {
        assert!(keys.contains(&k), "{k}");
    }
    assert_eq!(c["K"]["value"], "1/6");
    assert_eq!(c["K"]["constant"], true);
    assert_eq!(c["B2"]["value"], "2/3");
    assert_eq!(c["N"], 10);
    assert_eq!(c["ranks"]["dprime"], 2);
    assert_eq!(c["flags"]["kahler"], "totally_real");
    assert_eq!(c["isotropy"], "inf");
    assert_eq!(v["summary"]["passed"], 1);
}

#[test]
fn verify_failure_exits_one() {
    let o = run(&["verify", "--case", "T1.4-2", "--isotropy-bound", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
    assert!(stdout(&o).contains("isotropy expected geq:2"));
}

#[test]
fn unknown_case_exits_two() {
    let o = run(&["verify", "--case", "NOPE"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown case 'NOPE'"));
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        vec!["verify", "--jobs", "0"],
        vec!["verify", "--isotropy-bound", "0"],
        vec!["frobnicate"],
        vec!["analyze", "x.gsl", "--expect", "H=1"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn analyze_reports_and_asserts() {
    let s = script("T1.2-5");
    let o = run(&["analyze", &s, "--expect", "K=1", "--expect", "B2=2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("K = 1 (constant)"), "{out}");
    assert!(out.contains("B2 = 2 (constant)"));
    assert!(out.contains("eq32_zero: true"));
    let o = run(&["analyze", &s, "--expect", "K=2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("expect K = 2: FAILED, got 1"));
}

#[test]
fn analyze_json_and_theta() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("a.json");
    let o = run(&[
        "analyze",
        &script("T1.3-3"),
        "--theta",
        "3/5+4/5i",
        "--json",
        p.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["K"]["value"], "2/5");
    assert_eq!(v["B2"]["value"], "4/5");
    assert_eq!(v["flags"]["eq32"], true);
    assert_eq!(v["pass"], true);
    let o = run(&["analyze", &script("T1.3-3"), "--theta", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn analyze_non_harmonic_script() {
    let o = run(&["analyze", fixture("non_harmonic.gsl").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("harmonic_residual_zero: false"), "{out}");
    assert!(out.contains("witness: harmonic"));
}

#[test]
fn analyze_missing_file_exits_two() {
    let o = run(&["analyze", "/nonexistent/map.gsl"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("cannot read"));
}

#[test]
fn eval_points() {
    let o = run(&["eval", &script("T1.1-1"), "--at", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "K = 2"), "{}", stdout(&o));
    let o = run(&["eval", &script("T1.4-3"), "--at", "1+i"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "K = 1/6"));
    assert!(stdout(&o).lines().any(|l| l == "B2 = 2/3"));
}

#[test]
fn eval_rejects_bad_points_and_poles() {
    assert_eq!(run(&["eval", &script("T1.1-1"), "--at", "1/0"]).status.code(), Some(2));
    let o = run(&["eval", fixture("pole_at_origin.gsl").to_str().unwrap(), "--at", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("pole at z = 0"));
}

#[test]
fn error_fixtures_exit_two_with_positions() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/fixtures/errors");
    for e in fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        let text = fs::read_to_string(&p).unwrap();
        let pos = text.lines().next().unwrap().rsplit(' ').next().unwrap().to_string();
        let o = run(&["analyze", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{p:?}");
        let err = stderr(&o);
        assert!(err.contains(&format!("{}:{pos}:", p.display())), "{p:?}: {err}");
        assert!(err.contains('^'));
    }
}

#[test]
fn internal_errors_exit_three() {
    for stage in ["verify", "dispatch"] {
        let o = bin()
            .args(["verify", "--case", "T1.1-1"])
            .env("GRASSMIN_FAULT", stage)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(3), "{stage}");
        assert!(stderr(&o).contains("internal error"));
    }
}

#[test]
fn catalog_list_shows_every_case() {
    let o = run(&["catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for id in ["T1.1-1", "T1.2-7", "T1.3-3", "T1.4-3", "NEG-1"] {
        assert!(out.contains(id));
    }
    assert!(out.contains("const(w=48, value=theta)"));
}
