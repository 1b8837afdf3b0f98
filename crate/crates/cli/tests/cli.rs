use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::Value;
use tempfile::NamedTempFile;

fn models_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn model(name: &str) -> String {
    models_dir().join(name).to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["taut"];
    full.extend_from_slice(args);
    let code = taut_cli::run_with(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let mut with_json = vec!["--json"];
    with_json.extend_from_slice(args);
    let (code, out, err) = run(&with_json);
    assert!(err.is_empty(), "{err}");
    (code, serde_json::from_str(&out).unwrap())
}

fn temp_model(src: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(src.as_bytes()).unwrap();
    f
}

fn value<'a>(report: &'a Value, name: &str) -> &'a str {
    report["values"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["name"] == name)
        .unwrap_or_else(|| panic!("no value {name}"))["value"]
        .as_str()
        .unwrap()
}

fn statuses(report: &Value) -> Vec<(String, String)> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["status"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn exterior_check_passes() {
    let (code, report) = run_json(&["check", &model("exterior-g2.toml")]);
    assert_eq!(code, 0);
    let checks = statuses(&report);
    assert!(checks.len() >= 9);
    assert!(checks.iter().all(|(_, s)| s == "pass"), "{checks:?}");
}

#[test]
fn non_symplectic_sigma_is_an_input_error() {
    let f = temp_model("kind = \"lattice\"\n[lattice]\ngram = [[0, 1], [-1, 0]]\nsigma = [[2, 0], [0, 1]]\n");
    let (code, _, err) = run(&["check", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("does not preserve the polarization"), "{err}");
}

#[test]
fn unknown_key_reports_line_and_column() {
    let f = temp_model("kind = \"exterior\"\n[exterior]\ngenus = 2\ncolour = 3\n");
    let (code, _, err) = run(&["check", f.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4, column 1"), "{err}");
}

#[test]
fn genus_cap_refuses_large_models() {
    let f = temp_model("kind = \"exterior\"\n[exterior]\ngenus = 7\n");
    let path = f.path().to_str().unwrap();
    let (code, _, err) = run(&["check", path]);
    assert_eq!(code, 2);
    assert!(err.contains("genus cap"), "{err}");
    let (code, _, _) = run(&["--genus-cap", "7", "hilbert", path]);
    assert_eq!(code, 0);
}

#[test]
fn gonal_preset_d6() {
    let (code, report) = run_json(&["check", &model("trigonal-d6.toml")]);
    assert_eq!(code, 0);
    assert_eq!(value(&report, "d"), "6");
    let dim = report["checks"].as_array().unwrap().iter().find(|c| c["name"] == "dimension matches the monomial count").unwrap();
    assert_eq!(dim["detail"], "dim 7, expected 7");
}

#[test]
fn tetragonal_preset_fails_on_missing_fourier() {
    let (code, out, _) = run(&["preset", "tetragonal:d=9,k=1"]);
    assert_eq!(code, 0);
    let f = temp_model(&out);
    let (code, report) = run_json(&["check", f.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    let checks = statuses(&report);
    assert!(checks.contains(&("Fourier operator present".to_string(), "fail".to_string())));
}

#[test]
fn preset_errors() {
    assert_eq!(run(&["preset", "hexagonal:d=3"]).0, 2);
    assert_eq!(run(&["preset", "trigonal"]).0, 2);
    assert_eq!(run(&["preset", "gonal:d=3"]).0, 2);
    assert_eq!(run(&["preset", "trigonal:d=6,k=1"]).0, 2);
    assert_eq!(run(&["preset", "gonal:d=6,gonality=2"]).0, 0);
}

#[test]
fn empty_closure_is_the_unit() {
    let (code, report) = run_json(&["closure", &model("exterior-g2.toml")]);
    assert_eq!(code, 0);
    assert_eq!(value(&report, "closure dimension"), "1");
    let (_, report) = run_json(&["closure", &model("trigonal-d6.toml")]);
    assert_eq!(value(&report, "closure dimension"), "1");
}

#[test]
fn exterior_closure_of_the_curve() {
    let (_, report) = run_json(&["closure", &model("exterior-g2.toml"), "--seed", "C"]);
    assert_eq!(value(&report, "closure dimension"), "3");
}

#[test]
fn lattice_closure_matches_pullback_algebra() {
    let (code, report) = run_json(&["closure", &model("bielliptic.toml")]);
    assert_eq!(code, 0);
    assert_eq!(value(&report, "closure dimension"), value(&report, "pullback algebra dimension"));
    let names: Vec<_> = statuses(&report).into_iter().map(|(n, _)| n).collect();
    assert!(names.iter().any(|n| n.starts_with("iota_Y^*")));
    assert!(names.iter().any(|n| n.starts_with("iota_Z^*")));
}

#[test]
fn extra_pusher_in_group_algebra() {
    let (code, report) = run_json(&["closure", &model("bielliptic.toml"), "--pusher", "1 - s"]);
    assert_eq!(code, 0);
    assert!(value(&report, "Pi").contains("1 - s"), "{}", value(&report, "Pi"));
}

#[test]
fn bielliptic_decomposition() {
    let (code, report) = run_json(&["decompose", &model("bielliptic.toml")]);
    assert_eq!(code, 0);
    let rows = report["tables"][0]["rows"].as_array().unwrap();
    for row in rows {
        assert_eq!(row[1], "1");
        assert_eq!(row[3], "2");
    }
    let checks = statuses(&report);
    assert!(checks.contains(&("(N_f)_*[C] = n[C']".to_string(), "pass".to_string())));
}

#[test]
fn degenerate_decompositions_are_noted() {
    let (_, report) = run_json(&["decompose", &model("identity.toml")]);
    let notes = report["notes"].to_string();
    assert!(notes.contains("degenerate"), "{notes}");
    let (_, report) = run_json(&["decompose", &model("hyperelliptic-involution.toml")]);
    let notes = report["notes"].to_string();
    assert!(notes.contains("genus 0"), "{notes}");
}

#[test]
fn decompose_needs_a_lattice() {
    assert_eq!(run(&["decompose", &model("exterior-g2.toml")]).0, 2);
}

#[test]
fn hilbert_tables() {
    let (_, report) = run_json(&["hilbert", &model("exterior-g2.toml")]);
    let dims: Vec<_> = report["tables"][0]["rows"].as_array().unwrap().iter().map(|r| r[1].as_str().unwrap().to_string()).collect();
    assert_eq!(dims, ["1", "4", "6", "4", "1"]);
    let (_, report) = run_json(&["hilbert", &model("trigonal-d6.toml")]);
    assert_eq!(value(&report, "total dimension"), "7");
}

#[test]
fn fourier_of_theta_power() {
    let (code, report) = run_json(&["fourier", &model("exterior-g2.toml"), "--class", "theta^2/2"]);
    assert_eq!(code, 0);
    assert_eq!(value(&report, "F(class)"), "1");
    let (code, report) = run_json(&["fourier", &model("elliptic-curve.toml"), "--class", "1"]);
    assert_eq!(code, 0);
    assert_eq!(value(&report, "F(class)"), "-eta");
}

#[test]
fn fourier_of_unknown_name() {
    let (code, _, err) = run(&["fourier", &model("exterior-g2.toml"), "--class", "zeta"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown class 'zeta'"), "{err}");
}

#[test]
fn named_classes_resolve() {
    let (code, report) = run_json(&["fourier", &model("exterior-g2.toml"), "--class", "w1"]);
    assert_eq!(code, 0);
    assert_eq!(value(&report, "class"), value(&run_json(&["fourier", &model("exterior-g2.toml"), "--class", "theta"]).1, "class"));
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["check", "bielliptic.toml"],
        vec!["closure", "shift3-rot3.toml"],
        vec!["hilbert", "trigonal-d6.toml"],
    ] {
        let path = model(args[1]);
        let a = run(&[args[0], &path]);
        let b = run(&[args[0], &path]);
        assert_eq!(a, b);
    }
}

#[test]
fn digest_depends_on_arguments() {
    let path = model("exterior-g2.toml");
    let (_, a) = run_json(&["fourier", &path, "--class", "theta"]);
    let (_, b) = run_json(&["fourier", &path, "--class", "C"]);
    assert_ne!(a["digest"], b["digest"]);
}
