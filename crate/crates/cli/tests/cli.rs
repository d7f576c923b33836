use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcscohom")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const PHI: &str = r#"{"coeff":"Z/2","f":{"degree":2,"values":[0,0,0,0,0,1,0,1,0,1,0,1,0,0,0,0]}}"#;
const NOT_A_COCYCLE: &str = r#"{"coeff":"Z/2","f":{"degree":2,"values":[0,0,0,0,0,1,0,0,0,0,0,0,0,0,0,0]}}"#;

#[test]
fn classify_z4_gives_four_classes() {
    let out = run(&["classify", "builtin:z4-lcs", "--coeff", "Z/2", "--flavor", "cycle-type"]);
    assert_eq!(out.status.code(), Some(0));
    let classes = json(&out);
    let classes = classes.as_array().unwrap();
    assert_eq!(classes.len(), 4);
    for c in classes {
        assert_eq!(c["extension"]["order"], 8);
    }
}

#[test]
fn cycle_set_cohomology_of_z4() {
    let out = run(&["cohomology", "builtin:z4-lcs", "--theory", "cs", "--coeff", "Z/2", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["invariants"], serde_json::json!(vec![2; 12]));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    for args in [
        vec!["classify", "builtin:z4-lcs", "--coeff", "Z/2"],
        vec!["cohomology", "builtin:trivial(2)", "--theory", "full", "--coeff", "Z/2", "--degree", "2", "--normalized"],
        vec!["verify-paper", "--json"],
        vec!["bicomplex-check", "builtin:z4-lcs", "--max-degree", "3"],
    ] {
        let a = run(&args);
        let b = run(&args);
        let c = run(&[&["--sequential"], &args[..]].concat());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, c.stdout, "{args:?}");
    }
}

#[test]
fn convert_round_trips() {
    let dir = TempDir::new().unwrap();
    let lcs = run(&["convert", "builtin:z4-brace"]);
    assert_eq!(lcs.status.code(), Some(0));
    assert_eq!(json(&lcs)["kind"], "lcs");
    let lcs_path = write(&dir, "z4.json", std::str::from_utf8(&lcs.stdout).unwrap());
    let brace = run(&["convert", &lcs_path]);
    assert_eq!(json(&brace)["kind"], "brace");
    let brace_path = write(&dir, "brace.json", std::str::from_utf8(&brace.stdout).unwrap());
    let again = run(&["convert", &brace_path]);
    assert_eq!(again.stdout, lcs.stdout);
    assert_eq!(run(&["validate", &brace_path]).status.code(), Some(0));
}

#[test]
fn extension_files_round_trip_and_compare() {
    let dir = TempDir::new().unwrap();
    let cocycle = write(&dir, "phi.json", PHI);
    let ext = dir.path().join("ext.json");
    let out = run(&["-o", ext.to_str().unwrap(), "extend", "builtin:z4-lcs", "--cocycle", &cocycle, "--flavor", "reduced"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let parsed: Value = serde_json::from_str(&std::fs::read_to_string(&ext).unwrap()).unwrap();
    assert_eq!(parsed["total"]["order"], 8);

    let ext = ext.to_str().unwrap();
    let same = run(&["equivalent", ext, ext]);
    assert_eq!(same.status.code(), Some(0));
    assert_eq!(json(&same)["equivalent"], true);

    let zero = write(&dir, "zero.json", &PHI.replace(",1", ",0"));
    let split = dir.path().join("split.json");
    run(&["-o", split.to_str().unwrap(), "extend", "builtin:z4-lcs", "--cocycle", &zero]);
    let differ = run(&["equivalent", ext, split.to_str().unwrap()]);
    assert_eq!(differ.status.code(), Some(1));
    assert_eq!(json(&differ)["equivalent"], false);
}

#[test]
fn cocycle_checks_report_and_exit() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.json", PHI);
    let bad = write(&dir, "bad.json", NOT_A_COCYCLE);
    let ok = run(&["cocycle-check", "builtin:z4-lcs", "--cocycle", &good]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["valid"], true);
    let fail = run(&["cocycle-check", "builtin:z4-lcs", "--cocycle", &bad]);
    assert_eq!(fail.status.code(), Some(1));
    let report = json(&fail);
    assert_eq!(report["valid"], false);
    assert!(!report["violations"].as_array().unwrap().is_empty());
    assert_eq!(run(&["extend", "builtin:z4-lcs", "--cocycle", &bad]).status.code(), Some(1));
}

#[test]
fn fault_injection_fails_verification() {
    let out = run(&["verify-paper", "--json", "--corrupt", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let report = json(&out);
    assert_eq!(report["passed"], false);
    assert!(report.to_string().contains("cycle"), "{report}");
    let clean = run(&["verify-paper", "--json"]);
    assert_eq!(clean.status.code(), Some(0));
    assert_eq!(json(&clean)["passed"], true);
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let junk = write(&dir, "junk.json", "{ not json");
    let missing = dir.path().join("missing.json");
    for args in [
        vec!["frobnicate"],
        vec!["validate", missing.to_str().unwrap()],
        vec!["validate", &junk],
        vec!["validate", "builtin:nope"],
        vec!["cohomology", "builtin:z4-lcs", "--theory", "cs", "--coeff", "Z/1", "--degree", "2"],
        vec!["cohomology", "builtin:z4-lcs", "--theory", "full", "--coeff", "Z/2", "--degree", "0"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn budget_limits_are_enforced() {
    let args = ["cohomology", "builtin:z4-lcs", "--theory", "reduced", "--coeff", "Z/2", "--degree", "3"];
    let out = Command::new(env!("CARGO_BIN_EXE_lcscohom"))
        .env("LCSCOHOM_BUDGET", "10")
        .args(args)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let flag = run(&[&["--budget", "10"], &args[..]].concat());
    assert_eq!(flag.status.code(), Some(2));
    assert_eq!(run(&args).status.code(), Some(0));
}

#[test]
fn invalid_structures_exit_one() {
    let dir = TempDir::new().unwrap();
    let broken = r#"{"kind":"lcs","order":2,"add":[[0,1],[1,0]],"dot":[[0,0],[0,0]]}"#;
    let path = write(&dir, "broken.json", broken);
    let out = run(&["validate", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["valid"], false);
    assert!(Path::new(&path).exists());
}

#[test]
fn human_mode_prints_text() {
    let out = run(&["--human", "cohomology", "builtin:z4-lcs", "--theory", "reduced", "--coeff", "Z/2", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(serde_json::from_str::<Value>(&text).is_err());
    assert!(text.contains('2'));
}
