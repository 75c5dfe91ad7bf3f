//! End-to-end tests driving the hblab binary: exit codes, report files,
//! override precedence, and byte-level determinism.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn hblab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hblab"))
}

fn write_config(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn verify_with_no_presets_writes_an_empty_table() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("out");
    let out = hblab()
        .args(["verify", "--grid-size", "1024"])
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let report = fs::read_to_string(out_dir.join("report.csv")).unwrap();
    let mut lines = report.lines();
    assert!(lines.next().unwrap().starts_with("# provenance: verify@"));
    assert_eq!(
        lines.next().unwrap(),
        "criterion,preset,status,measured,name"
    );
    assert_eq!(lines.next(), None);
}

#[test]
fn verify_passes_on_the_default_grid() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("out");
    let out = hblab()
        .args(["verify", "half-one-plus-z", "rz(0.5)"])
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let report = fs::read_to_string(out_dir.join("report.csv")).unwrap();
    let rows: Vec<&str> = report.lines().skip(2).collect();
    assert!(!rows.is_empty());
    for row in &rows {
        assert!(row.contains(",pass,"), "failing row: {row}");
    }
    let summary = fs::read_to_string(out_dir.join("summary.txt")).unwrap();
    assert!(summary.contains("criterion 13: PASS"));
}

#[test]
fn verify_reads_presets_from_the_config_when_none_are_passed() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), "v.json", r#"{"presets": ["rz(0.5)"]}"#);
    let out_dir = tmp.path().join("out");
    let out = hblab()
        .args(["verify", "--grid-size", "1024"])
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let report = fs::read_to_string(out_dir.join("report.csv")).unwrap();
    assert!(report.lines().skip(2).count() > 0);
    assert!(report.contains("rz(0.5)"));
    assert!(!report.contains("half-one-plus-z"));
}

#[test]
fn mate_reports_the_constant_mate_of_rz() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "mate.json",
        r#"{"kind": "mate", "preset": "rz(0.5)"}"#,
    );
    let out_dir = tmp.path().join("out");
    let out = hblab()
        .args(["mate", "--grid-size", "1024"])
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let report = fs::read_to_string(out_dir.join("report.csv")).unwrap();
    // a(0) = sqrt(0.75), all other mate coefficients zero
    let a0: f64 = report
        .lines()
        .find(|l| l.starts_with("0,"))
        .unwrap()
        .split(',')
        .nth(3)
        .unwrap()
        .parse()
        .unwrap();
    assert!((a0 - 0.75f64.sqrt()).abs() < 1e-8);
    let summary = fs::read_to_string(out_dir.join("summary.txt")).unwrap();
    assert!(summary.contains("pythagorean deviation"));
}

#[test]
fn lift_accepts_an_explicit_rational_symbol() {
    let tmp = tempfile::tempdir().unwrap();
    // b = (1+z)/2 written as numerator/denominator lists
    let cfg = write_config(
        tmp.path(),
        "lift.json",
        r#"{"kind": "lift", "b_numerator": [[0.5, 0], [0.5, 0]], "b_denominator": [[1, 0]], "f": [[1, 0]]}"#,
    );
    let out_dir = tmp.path().join("out");
    let out = hblab()
        .args(["lift", "--grid-size", "1024"])
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let summary = fs::read_to_string(out_dir.join("summary.txt")).unwrap();
    assert!(summary.contains("hb_norm_sqr = 2.000000000000e0"));
}

#[test]
fn debug_flag_writes_the_clark_density_dump() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "clark.json",
        r#"{"kind": "clark", "preset": "half-one-plus-z", "alpha": [1, 0]}"#,
    );
    let out_dir = tmp.path().join("out");
    let out = hblab()
        .args(["clark", "--grid-size", "1024", "--debug"])
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let report = fs::read_to_string(out_dir.join("report.csv")).unwrap();
    assert!(report.contains("singular_mass,2.0000000"));
    let dump = fs::read_to_string(out_dir.join("debug").join("density.csv")).unwrap();
    assert_eq!(dump.lines().nth(1).unwrap(), "index,density");
    assert_eq!(dump.lines().count(), 2 + 1024);
}

#[test]
fn completeness_emits_the_report_schema() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "comp.json",
        r#"{"kind": "completeness", "preset": "rz(0.5)", "lambda_generator": "harmonic",
            "lambda_count": 10, "degrees": [1, 2, 4, 8]}"#,
    );
    let out_dir = tmp.path().join("out");
    let out = hblab()
        .args(["completeness", "--grid-size", "1024"])
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let report = fs::read_to_string(out_dir.join("report.csv")).unwrap();
    assert_eq!(
        report.lines().nth(1).unwrap(),
        "N,target,residual,gram_condition,flags"
    );
    // 4 family sizes x 3 default targets
    assert_eq!(report.lines().skip(2).count(), 12);
    let summary = fs::read_to_string(out_dir.join("summary.txt")).unwrap();
    assert!(summary.contains("blaschke partial sums:"));
}

#[test]
fn reports_are_byte_for_byte_deterministic() {
    let tmp = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for run in ["a", "b"] {
        let out_dir = tmp.path().join(run);
        let out = hblab()
            .args(["verify", "rz(0.3)", "--grid-size", "1024", "--seed", "7"])
            .arg("--out")
            .arg(&out_dir)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", stderr(&out));
        reports.push((
            fs::read(out_dir.join("report.csv")).unwrap(),
            fs::read(out_dir.join("summary.txt")).unwrap(),
        ));
    }
    assert_eq!(reports[0].0, reports[1].0);
    assert_eq!(reports[0].1, reports[1].1);
}

#[test]
fn flag_beats_environment_beats_config_for_the_grid() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "mate.json",
        r#"{"kind": "mate", "preset": "rz(0.5)", "grid_n": 4096}"#,
    );

    // env over config
    let out_env = tmp.path().join("env");
    let out = hblab()
        .args(["mate"])
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out_env)
        .env("HB_GRID_SIZE", "2048")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let summary = fs::read_to_string(out_env.join("summary.txt")).unwrap();
    assert!(summary.contains("N = 2048"), "{summary}");

    // flag over env
    let out_flag = tmp.path().join("flag");
    let out = hblab()
        .args(["mate", "--grid-size", "1024"])
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out_flag)
        .env("HB_GRID_SIZE", "2048")
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let summary = fs::read_to_string(out_flag.join("summary.txt")).unwrap();
    assert!(summary.contains("N = 1024"), "{summary}");
}

#[test]
fn exit_codes_distinguish_error_classes() {
    let tmp = tempfile::tempdir().unwrap();
    let out_dir = tmp.path().join("out");

    // missing config file: io, exit 1
    let out = hblab()
        .args(["mate", "--config"])
        .arg(tmp.path().join("absent.json"))
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", stderr(&out));
    assert!(stderr(&out).starts_with("error: io:"));

    // malformed json: parse, exit 2
    let bad = write_config(tmp.path(), "bad.json", "{ nope");
    let out = hblab()
        .args(["mate"])
        .arg("--config")
        .arg(&bad)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).starts_with("error: parse:"));

    // grid size not a power of two: validation, exit 3
    let badn = write_config(
        tmp.path(),
        "badn.json",
        r#"{"kind": "mate", "preset": "rz(0.5)", "grid_n": 1000}"#,
    );
    let out = hblab()
        .args(["mate"])
        .arg("--config")
        .arg(&badn)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).starts_with("error: validation:"));

    // missing --config for a kind that needs one: validation, exit 3
    let out = hblab()
        .args(["mate", "--out"])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));

    // b = z is an extreme point: domain, exit 4
    let bz = write_config(
        tmp.path(),
        "bz.json",
        r#"{"kind": "mate", "b_numerator": [[0, 0], [1, 0]]}"#,
    );
    let out = hblab()
        .args(["mate", "--grid-size", "1024"])
        .arg("--config")
        .arg(&bz)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4), "{}", stderr(&out));
    assert!(stderr(&out).starts_with("error: domain:"));
}

#[test]
fn classify_handles_the_trivial_case() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(
        tmp.path(),
        "cls.json",
        r#"{"kind": "classify", "preset": "half-one-plus-z", "c": [0, 0]}"#,
    );
    let out_dir = tmp.path().join("out");
    let out = hblab()
        .args(["classify", "--grid-size", "1024"])
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let report = fs::read_to_string(out_dir.join("report.csv")).unwrap();
    assert!(report.contains("case,modulus_lt_1"));
    assert!(report.contains("cyclic,true"));
}
