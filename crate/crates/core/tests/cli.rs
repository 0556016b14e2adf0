//! Command-line behaviour: exit codes, report formats, bundles on disk.

use std::path::PathBuf;
use std::process::Command;

use ybelab::bundle::Bundle;
use ybelab::cli::run_with;
use ybelab::field::FieldSpec;
use ybelab::fixtures;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(std::iter::once("ybelab").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn repo_fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn flagship_tensor_passes_from_the_fixture_file() {
    let path = repo_fixtures().join("ut2.json");
    let (code, out, _) = run(&["check", "eq:aybe", "--algebra", path.to_str().unwrap(), "--tensor", "flagship"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("PASS"));
}

#[test]
fn failing_check_prints_witness_and_exits_one() {
    let (code, out, _) = run(&["check", "eq:rbo", "--algebra", "nil2", "--map", "id", "--weight", "0", "--json"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["pass"], false);
    assert_eq!(v["checks"][0]["witness"]["indices"], serde_json::json!([0, 0]));
}

#[test]
fn gate_failure_counts_as_failure() {
    let (code, out, _) = run(&[
        "check", "eq:gmybe", "--algebra", "nil2", "--map", "zero", "--beta", "P1", "--mass", "1",
    ]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("gate"));
}

#[test]
fn usage_and_input_errors_exit_two() {
    for args in [
        vec!["nonsense"],
        vec!["check", "eq:unknown", "--algebra", "nil2"],
        vec!["check", "eq:rbo", "--algebra", "nil2", "--map", "missing"],
        vec!["check", "eq:rbo", "--algebra", "nil2", "--map", "id", "--field", "F4"],
        vec!["search", "aybe", "--algebra", "nil2"],
        vec!["search", "nonsense", "--algebra", "nil2", "--field", "F3"],
        vec!["verify", "thm:unknown"],
        vec!["verify", "thm:ansatz", "--field", "F2", "--exhaustive"],
        vec!["search", "aybe", "--algebra", "m2", "--field", "F3", "--budget", "1000"],
    ] {
        let (code, _, err) = run(&args);
        assert_eq!(code, 2, "{args:?}: {err}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn search_lists_solutions_with_labels() {
    let (code, out, _) = run(&["search", "aybe", "--algebra", "ut2", "--field", "F3", "--skew"]);
    assert_eq!(code, 0);
    assert!(out.contains("5 solutions among 27 candidates"), "{out}");
    assert!(out.contains("E11⊗E12 + 2·E12⊗E11"), "{out}");
}

#[test]
fn search_json_is_worker_independent() {
    let a = run(&["search", "rb", "--algebra", "nil2", "--field", "F3", "--json", "--workers", "1"]).1;
    let b = run(&["search", "rb", "--algebra", "nil2", "--field", "F3", "--json", "--workers", "5"]).1;
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["count"], 15);
}

#[test]
fn verify_reports_summary() {
    let (code, out, _) = run(&["verify", "co:mop", "--field", "F3", "--exhaustive", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["violations"], 0);
    assert!(v["cases"].as_u64().unwrap() > 0);
}

#[test]
fn construct_emits_a_loadable_bundle() {
    let (code, out, _) = run(&["construct", "tilde", "--algebra", "nil2", "--map", "P1"]);
    assert_eq!(code, 0);
    let b = Bundle::parse(&out).unwrap();
    let (name, hat) = b.pick_algebra(None).unwrap();
    assert_eq!(name, "Nil2_double");
    assert_eq!(hat.dim(), 4);
    let minus = b.tensor("minus").unwrap();
    assert!(minus.tensor.is_skew());

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("double.json");
    std::fs::write(&path, &out).unwrap();
    let (code, report, _) = run(&["check", "eq:aybe", "--algebra", path.to_str().unwrap(), "--tensor", "minus"]);
    assert_eq!(code, 0, "{report}");
}

#[test]
fn every_construction_runs_on_some_fixture() {
    let cases: &[&[&str]] = &[
        &["opposite", "--algebra", "ut2"],
        &["dual-bimodule", "--algebra", "ut2"],
        &["semidirect", "--algebra", "nil2"],
        &["double", "--algebra", "dualnum"],
        &["matched-pair-sum", "--algebra", "m2", "--split", "0,1:2,3"],
        &["star", "--algebra", "nil2", "--map", "P1"],
        &["diamond", "--algebra", "nil2", "--map", "zero", "--weight", "1"],
        &["dual-product", "--algebra", "ut2", "--tensor", "flagship"],
        &["aguiar", "--algebra", "nil2", "--tensor", "r_e2e2"],
        &["frobenius-form", "--algebra", "dualnum", "--tensor", "x_x"],
        &["tilde", "--algebra", "dualnum", "--map", "minus_id"],
    ];
    for case in cases {
        let mut args = vec!["construct"];
        args.extend_from_slice(case);
        let (code, out, err) = run(&args);
        if case[0] == "frobenius-form" {
            // x⊗x is degenerate, so no form exists
            assert_eq!(code, 2, "{err}");
            continue;
        }
        assert_eq!(code, 0, "{case:?}: {err}");
        Bundle::parse(&out).unwrap_or_else(|e| panic!("{case:?}: {e}"));
    }
}

#[test]
fn every_check_target_is_dispatched() {
    for target in ybelab::cli::CHECKS {
        let (_, _, err) = run(&["check", target, "--algebra", "dualnum"]);
        assert!(!err.contains("unknown check target"), "{target}: {err}");
    }
}

#[test]
fn fixture_files_are_canonical() {
    let dir = repo_fixtures();
    let (code, out, _) = run(&["fixtures", "--check", dir.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    for name in fixtures::NAMES {
        let path = dir.join(format!("{}.json", fixtures::file_stem(name)));
        let text = std::fs::read_to_string(&path).unwrap();
        let loaded = Bundle::load(&path).unwrap();
        assert_eq!(loaded.emit(), text, "byte round trip of {name}");
        let built = fixtures::bundle(name, FieldSpec::Rationals).unwrap();
        assert_eq!(loaded, built, "{name}");
    }
}

#[test]
fn fixtures_write_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(run(&["fixtures", "--write", d]).0, 0);
    assert_eq!(run(&["fixtures", "--check", d]).0, 0);
    std::fs::write(dir.path().join("nil2.json"), "{}").unwrap();
    assert_eq!(run(&["fixtures", "--check", d]).0, 1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_ybelab");
    let ok = Command::new(bin)
        .args(["check", "eq:aybe", "--algebra", "ut2", "--tensor", "flagship"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let fail = Command::new(bin)
        .args(["check", "eq:rbo", "--algebra", "nil2", "--map", "id"])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(1));
    let usage = Command::new(bin).args(["check"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn budget_comes_from_the_environment() {
    let bin = env!("CARGO_BIN_EXE_ybelab");
    let out = Command::new(bin)
        .args(["search", "aybe", "--algebra", "ut2", "--field", "F3"])
        .env("YBELAB_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
    let flag_wins = Command::new(bin)
        .args(["search", "aybe", "--algebra", "ut2", "--field", "F3", "--skew", "--budget", "1000"])
        .env("YBELAB_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(flag_wins.status.code(), Some(0));
}
