//! End-to-end checks of the `chbsim` binary: exit codes, subcommand output,
//! and the files each mode writes.

use std::fs;
use std::process::Command;

fn chbsim() -> Command {
    Command::new(env!("CARGO_BIN_EXE_chbsim"))
}

#[test]
fn validate_reports_ok_for_the_builtin_tables() {
    let out = chbsim().arg("validate").output().unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 4);
    for line in stdout.lines() {
        assert!(line.contains(": ok"), "{line}");
    }
}

#[test]
fn validate_accepts_an_imported_table_and_flags_a_corrupted_one() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.csv");
    let table = chbsim::build_modified(5).unwrap().switching_table();
    fs::write(&good, table.to_csv()).unwrap();
    let out = chbsim()
        .args(["validate", "--topology", "modified", "--levels", "5"])
        .arg("--table")
        .arg(&good)
        .output()
        .unwrap();
    assert!(out.status.success());

    let bad = dir.path().join("bad.csv");
    fs::write(&bad, table.to_csv().replace("2,1,1,0,0,1,0", "2,1,1,1,0,1,0")).unwrap();
    let out = chbsim()
        .args(["validate", "--topology", "modified", "--levels", "5"])
        .arg("--table")
        .arg(&bad)
        .output()
        .unwrap();
    assert!(!out.status.success(), "corrupted table must fail");
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("level 2"), "{stdout}");
    assert!(stdout.contains("S3/S2"), "{stdout}");

    // --table without a binding topology is a usage error
    let out = chbsim().arg("validate").arg("--table").arg(&good).output().unwrap();
    assert!(!out.status.success());
}

#[test]
fn paper_suite_prints_eight_rows_and_exports_33_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = chbsim()
        .args(["paper-suite", "--sample-rate", "200000", "--max-harmonic", "50"])
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = stdout
        .lines()
        .filter(|l| l.starts_with("conventional-") || l.starts_with("modified-"))
        .collect();
    assert_eq!(rows.len(), 8, "{stdout}");
    assert!(stdout.contains("ref_thd"));

    let written = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(written, 33);
    let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
    assert!(summary.starts_with(
        "name,topology,levels,load,switches,events_per_period,v_thd_pct,i_thd_pct,ref_thd_pct,delta_pp\n"
    ));
    assert_eq!(summary.lines().count(), 9);
}

#[test]
fn run_consumes_a_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("scenarios.toml");
    fs::write(
        &config,
        r#"
[[scenarios]]
name = "small"
topology = "modified"
levels = 7
load = { kind = "R", resistance = 10.0 }

[scenarios.modulation]
sample_rate_hz = 200000.0
modulation_index = 0.8
"#,
    )
    .unwrap();
    let out_dir = dir.path().join("out");
    let out = chbsim()
        .arg("run")
        .arg(&config)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("small"), "{stdout}");
    assert!(out_dir.join("small_voltage.csv").exists());
    assert!(out_dir.join("small_gates.csv").exists());

    let missing = chbsim().args(["run", "/nonexistent.toml"]).output().unwrap();
    assert!(!missing.status.success());
}

#[test]
fn export_writes_an_ad_hoc_scenario_with_segments() {
    let dir = tempfile::tempdir().unwrap();
    let out = chbsim()
        .args([
            "export",
            "--topology",
            "modified",
            "--levels",
            "5",
            "--load",
            "rl",
            "--scheme",
            "ls-pwm",
            "--sample-rate",
            "200000",
            "--segments",
        ])
        .arg("--out")
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let names: Vec<String> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert_eq!(names.len(), 6, "{names:?}");
    assert!(names.iter().any(|n| n.ends_with("_voltage_segments.csv")));
    let segments_file = names
        .iter()
        .find(|n| n.ends_with("_voltage_segments.csv"))
        .unwrap();
    let text = fs::read_to_string(dir.path().join(segments_file)).unwrap();
    assert!(text.starts_with("start,duration,volts\n"));
}
