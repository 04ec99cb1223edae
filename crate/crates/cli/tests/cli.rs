use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;

const M0: &str = include_str!("../../../fixtures/m0.adl");

fn m0_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/m0.adl")
}

fn archseam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_archseam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(path: &Path, args: &[&str]) -> Output {
    let mut full = vec![args[0], path.to_str().unwrap()];
    full.extend(&args[1..]);
    archseam(&full)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn validate_clean_fixture() {
    let o = run_on(&m0_path(), &["validate"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "");
    let json = run_on(&m0_path(), &["validate", "--format", "json"]);
    assert_eq!(stdout(&json), "[]\n");
}

#[test]
fn validate_mutant_reports_gap() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "mutant.adl", &M0.replace("bind VF1 -> M1\n", ""));
    let o = run_on(&p, &["validate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("R-VF-NOMOD VF1"), "{}", stdout(&o));
    let gaps = run_on(&p, &["gaps"]);
    assert_eq!(gaps.status.code(), Some(1));
    assert!(stdout(&gaps).contains("seam 2 viewfn-module: 1/2 realized (0.500)"));
}

#[test]
fn unknown_trace_root() {
    let o = run_on(&m0_path(), &["trace", "--from", "O9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("O9"));
    assert_eq!(stdout(&o), "");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(archseam(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run_on(&m0_path(), &["validate", "--bogus"]).status.code(), Some(2));
    assert_eq!(
        run_on(&m0_path(), &["export", "--format", "svg"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run_on(&m0_path(), &["export", "--format", "dot", "--scope", "seam9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        archseam(&["validate", "/definitely/not/here.adl"]).status.code(),
        Some(2)
    );
}

#[test]
fn broken_input() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "broken.adl", "process \"x\" as P1 {\n");
    let check = run_on(&p, &["check"]);
    assert_eq!(check.status.code(), Some(1));
    assert!(stdout(&check).contains("E-SYNTAX"));
    let fmt = run_on(&p, &["fmt"]);
    assert_eq!(fmt.status.code(), Some(2));
    assert_eq!(stdout(&fmt), "");
    assert!(stderr(&fmt).contains("E-SYNTAX"));

    let bin = dir.path().join("latin1.adl");
    std::fs::write(&bin, b"process \"caf\xe9\" as P1 {}").unwrap();
    let o = run_on(&bin, &["validate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("E-ENCODING"));
}

#[test]
fn rules_file_changes_severity() {
    let dir = tempfile::tempdir().unwrap();
    let p = write_temp(&dir, "mutant.adl", &M0.replace("bind VF1 -> M1\n", ""));
    let rules = write_temp(&dir, "rules.cfg", "# relaxed\nrule R-VF-NOMOD warning\n");
    let o = run_on(&p, &["validate", "--rules", rules.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("warning R-VF-NOMOD VF1"));
    let off = write_temp(&dir, "off.cfg", "rule R-VF-NOMOD off\n");
    assert_eq!(stdout(&run_on(&p, &["validate", "--rules", off.to_str().unwrap()])), "");
    let bad = write_temp(&dir, "bad.cfg", "rule R-NOPE off\n");
    assert_eq!(
        run_on(&p, &["validate", "--rules", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m0.dot");
    let o = run_on(&m0_path(), &["export", "--format", "dot", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written, stdout(&run_on(&m0_path(), &["export", "--format", "dot"])));
}

#[test]
fn fmt_output_reloads_to_same_model() {
    let dir = tempfile::tempdir().unwrap();
    let formatted = stdout(&run_on(&m0_path(), &["fmt"]));
    let p = write_temp(&dir, "fmt.adl", &formatted);
    assert_eq!(stdout(&run_on(&p, &["fmt"])), formatted);
    let without_locations = |path: &Path| {
        let mut v: serde_json::Value =
            serde_json::from_str(&stdout(&run_on(path, &["export", "--format", "json"]))).unwrap();
        for list in ["elements", "links"] {
            for item in v[list].as_array_mut().unwrap() {
                item.as_object_mut().unwrap().remove("location");
            }
        }
        v
    };
    assert_eq!(without_locations(&p), without_locations(&m0_path()));
}

#[test]
fn json_outputs_parse() {
    for args in [
        vec!["gaps", "--format", "json"],
        vec!["coverage", "--format", "json"],
        vec!["trace", "--from", "MM1", "--direction", "backward", "--format", "json"],
        vec!["impact", "--on", "M2", "--format", "json"],
        vec![
            "matrix",
            "--from-kind",
            "ViewFunction",
            "--to-kind",
            "SoftwareModule",
            "--format",
            "json",
        ],
        vec!["export", "--format", "json"],
    ] {
        let o = run_on(&m0_path(), &args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert!(!v.is_null());
    }
}

#[test]
fn coverage_reports_full_seams() {
    let o = run_on(&m0_path(), &["coverage", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let seams = v.as_array().unwrap();
    assert_eq!(seams.len(), 4);
    assert!(seams.iter().all(|s| s["coverage"] == 1.0));
}

fn mutant(lines: &[&str], drop: usize) -> String {
    lines
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != drop)
        .map(|(_, l)| format!("{l}\n"))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // Dropping any line of the fixture gives a model whose exit codes follow
    // the contract: 0 or 1 for check/validate/gaps, 0 or 2 for analyses.
    #[test]
    fn exit_code_contract(drop in 0usize..48) {
        let lines: Vec<&str> = M0.lines().collect();
        let dir = tempfile::tempdir().unwrap();
        let p = write_temp(&dir, "mutant.adl", &mutant(&lines, drop % lines.len()));
        let check = run_on(&p, &["check"]).status.code().unwrap();
        prop_assert!(check == 0 || check == 1);
        let validate = run_on(&p, &["validate"]);
        let code = validate.status.code().unwrap();
        prop_assert!(code == 0 || code == 1);
        prop_assert_eq!(code == 1, stdout(&validate).lines().any(|l| l.starts_with("error ")));
        let fmt = run_on(&p, &["fmt"]).status.code().unwrap();
        prop_assert_eq!(fmt, if check == 1 { 2 } else { 0 });
        let gaps = run_on(&p, &["gaps"]).status.code().unwrap();
        prop_assert!(gaps == 0 || gaps == 1);
    }
}
