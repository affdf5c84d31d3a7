//! End-to-end checks of the subcommands: exit codes, witnesses, reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn doc(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../decostab/testdata/docs")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decostab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn check_semistable_document_exits_zero() {
    let out = run(&["check", &doc("worked_semistable.json"), "--delta", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("SEMISTABLE"));
}

#[test]
fn check_strict_fails_on_strictly_semistable() {
    let out = run(&[
        "check",
        &doc("worked_semistable.json"),
        "--delta",
        "1",
        "--strict",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_unstable_document_exits_one_with_witness() {
    let out = run(&["check", &doc("worked_unstable.json"), "--delta", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("UNSTABLE"));
    assert!(
        text.contains("0 ⊂ F(1,0,1;k0)"),
        "witness chain printed: {text}"
    );
}

#[test]
fn check_trivial_catalog_exits_zero() {
    let out = run(&["check", &doc("trivial.json"), "--delta", "1"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn check_two_decorations_mode() {
    let out = run(&[
        "check",
        &doc("worked_semistable.json"),
        "--delta",
        "1",
        "--mode",
        "2dgpb",
        "--witness-format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["verdict"], "stable");
    assert_eq!(value["margin"], "1/1");
}

#[test]
fn check_fr_mode_reports_subobject_witness() {
    let out = run(&[
        "check",
        &doc("worked_unstable.json"),
        "--delta",
        "1",
        "--mode",
        "fr",
        "--witness-format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let value: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(value["witness"]["subobject"], "F");
}

#[test]
fn malformed_rational_exits_two() {
    let dir = std::env::temp_dir().join("decostab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_rational.json");
    let text = std::fs::read_to_string(doc("worked_semistable.json"))
        .unwrap()
        .replace("\"1/1\"", "\"1/0\"");
    std::fs::write(&path, text).unwrap();
    let out = run(&["check", path.to_str().unwrap(), "--delta", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("1/0"));
}

#[test]
fn missing_file_exits_two() {
    let out = run(&["check", "/nonexistent/model.json", "--delta", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nonmonotone_kappa_exits_two() {
    let dir = std::env::temp_dir().join("decostab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad_kappa.json");
    // chain E1 < E2 with κ(E1) > κ(E2)
    let doc_text = serde_json::json!({
        "schema_version": "1",
        "bundle": {
            "rank": 3, "degree": 0, "genus": 2, "dim_r": 3,
            "decoration": {"a": 2, "b": 1, "c": 0, "deg_l": 0, "deg_d": 0},
            "catalog": [
                {"id": "E1", "rank": 1, "degree": 0, "qdim": 1, "beta_flag": false, "higgs_flag": false},
                {"id": "E2", "rank": 2, "degree": 0, "qdim": 2, "beta_flag": false, "higgs_flag": false}
            ],
            "relations": [["E1", "E2"]],
            "profile": {"kind": "kappa", "kappa": {"E1": 2, "E2": 1}, "global_epsilon": true}
        }
    });
    std::fs::write(&path, doc_text.to_string()).unwrap();
    let out = run(&["check", path.to_str().unwrap(), "--delta", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("monotone"));
}

#[test]
fn jh_two_factor_model() {
    let out = run(&["jh", &doc("jh_direct_sum.json"), "--delta", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("fr-slope: -2/1"));
    assert_eq!(text.matches("rank 1").count(), 2, "two gr factors: {text}");
}

#[test]
fn jh_stable_model_has_a_single_factor() {
    let out = run(&["jh", &doc("git_worked.json"), "--delta", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.contains("filtration: 0 ⊂ E"),
        "length-one chain: {text}"
    );
    assert_eq!(
        text.matches("rank 2").count(),
        1,
        "single gr factor: {text}"
    );
}

#[test]
fn jh_rejects_unstable_input() {
    let out = run(&["jh", &doc("worked_unstable.json"), "--delta", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not fr-semistable"));
}

#[test]
fn git_worked_instance() {
    let out = run(&["git", &doc("git_worked.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("n2/n1 = 5/2"));
    assert!(text.contains("n3/n1 = 5/2"));
    assert!(text.contains("all signs agree"));
}

#[test]
fn verify_rank_one_is_vacuously_clean() {
    let out = run(&["verify", "--suite", "all", "--r-max", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stderr);
    assert!(text.contains("violations=0"));
}

#[test]
fn verify_rejects_unknown_suite() {
    let out = run(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_rejects_degenerate_twist() {
    let out = run(&["verify", "--suite", "git", "--r-max", "1", "--m", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not positive"));
}

#[test]
fn verify_out_file_matches_stdout() {
    let args = [
        "verify", "--suite", "jh", "--r-max", "2", "--d-max", "1", "--a-max", "1",
    ];
    let stdout_run = run(&args);
    assert_eq!(stdout_run.status.code(), Some(0));
    let dir = std::env::temp_dir().join("decostab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.jsonl");
    let mut file_args = args.to_vec();
    file_args.extend(["--out", path.to_str().unwrap()]);
    let file_run = run(&file_args);
    assert_eq!(file_run.status.code(), Some(0));
    assert!(file_run.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout_run.stdout);
}

#[test]
fn verify_writes_json_lines() {
    let out = run(&[
        "verify", "--suite", "fr", "--r-max", "2", "--d-max", "1", "--a-max", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout(&out).lines().take(5) {
        let value: serde_json::Value = serde_json::from_str(line).unwrap();
        for key in ["instance", "property", "lhs", "rhs", "verdict"] {
            assert!(value.get(key).is_some(), "record field {key}");
        }
    }
}

#[test]
fn strata_reports_exact_walls() {
    let out = run(&[
        "strata",
        "--r-max",
        "2",
        "--d-max",
        "1",
        "--a-max",
        "2",
        "--catalog-max",
        "3",
        "--delta-grid",
        "1/2,1,2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("walls: 1/1(F)"), "wall at δ = 1: {text}");
    assert!(text.contains("walls: none"));
    // crossing a wall flips the verdict
    assert!(
        text.lines().any(|l| l.contains("1/2:STABLE")
            && l.contains("1/1:SEMISTABLE")
            && l.contains("2/1:UNSTABLE")),
        "{text}"
    );
}

#[test]
fn worker_fanout_keeps_reports_byte_identical() {
    let args = [
        "verify",
        "--suite",
        "additivity",
        "--r-max",
        "2",
        "--d-max",
        "1",
        "--a-max",
        "2",
    ];
    let single = run(&args);
    let fanned = Command::new(env!("CARGO_BIN_EXE_decostab"))
        .args(args)
        .env("DECOSTAB_THREADS", "4")
        .output()
        .expect("binary runs");
    assert_eq!(single.status.code(), Some(0));
    assert_eq!(fanned.status.code(), Some(0));
    assert_eq!(single.stdout, fanned.stdout);
}

#[test]
fn explicit_pattern_document_is_checkable() {
    let out = run(&["check", &doc("explicit_pattern.json"), "--delta", "1"]);
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
    let out = run(&[
        "check",
        &doc("explicit_pattern.json"),
        "--delta",
        "1",
        "--mode",
        "fr",
    ]);
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
}
