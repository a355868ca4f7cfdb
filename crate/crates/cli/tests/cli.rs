//! End-to-end checks of the binary: exit codes, diagnostics, artifacts.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_social-fusion"))
}

fn write_spec(dir: &Path, text: &str) -> std::path::PathBuf {
    let path = dir.join("spec.toml");
    std::fs::write(&path, text).unwrap();
    path
}

const SMALL_SPEC: &str = r#"
n_nodes = 40
runs = 200
seed = 7
tau = 0.0
sensor.q = 0.01
sensor.r = 0.1
attack.strategy = "leading"
attack.n_star = [0, 10]
output.formats = ["csv", "svg"]
"#;

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn run_produces_artifacts_and_clears_marker() {
    let tmp = tempfile::tempdir().unwrap();
    let spec = write_spec(tmp.path(), SMALL_SPEC);
    let out_dir = tmp.path().join("out");
    let out = bin()
        .args(["run", "--spec"])
        .arg(&spec)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));

    assert!(out_dir.join("summary.csv").is_file());
    assert!(out_dir.join("manifest.json").is_file());
    assert!(out_dir.join("nodes_q0.01_r0.1_tau0_nstar0.csv").is_file());
    assert!(out_dir.join("nodes_q0.01_r0.1_tau0_nstar10.csv").is_file());
    assert!(out_dir.join("nodes_q0.01_r0.1_tau0_nstar10.svg").is_file());
    assert!(
        !out_dir.join(".incomplete").exists(),
        "completed run must clear the marker"
    );

    let summary = std::fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    let mut lines = summary.lines();
    assert_eq!(
        lines.next().unwrap(),
        "q,r,tau,n_star,md_rate,md_stderr,fa_rate,fa_stderr,md_worst_decile"
    );
    assert_eq!(lines.count(), 2);

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["config"]["seed"], 7);
    assert_eq!(manifest["config"]["attack"]["n_star"][1], 10);
    assert_eq!(manifest["outputs"]["points"].as_array().unwrap().len(), 2);
    assert!(manifest["conventions"]["unfavorable_ranking"]
        .as_str()
        .unwrap()
        .contains("ascending final social log-likelihood"));
}

#[test]
fn sweep_is_an_alias_of_run() {
    let tmp = tempfile::tempdir().unwrap();
    let spec = write_spec(tmp.path(), SMALL_SPEC);
    let run_dir = tmp.path().join("run");
    let sweep_dir = tmp.path().join("sweep");
    for (cmd, dir) in [("run", &run_dir), ("sweep", &sweep_dir)] {
        let out = bin()
            .args([cmd, "--spec"])
            .arg(&spec)
            .arg("--out")
            .arg(dir)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", stderr(&out));
    }
    let summary = |d: &Path| std::fs::read(d.join("summary.csv")).unwrap();
    assert_eq!(summary(&run_dir), summary(&sweep_dir));
}

#[test]
fn config_errors_exit_2_with_position() {
    let tmp = tempfile::tempdir().unwrap();

    // Unknown key: the diagnostic carries the line.
    let spec = write_spec(
        tmp.path(),
        "n_nodes = 10\nruns = 5\nsensor.q = 0.1\nsensor.r = 0.5\nbogus = 3\n",
    );
    let out = bin()
        .args(["run", "--spec"])
        .arg(&spec)
        .arg("--out")
        .arg(tmp.path().join("o1"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    let msg = stderr(&out);
    assert!(msg.contains("line 5"), "{msg}");
    assert!(msg.contains("bogus"), "{msg}");

    // Range violation: the diagnostic names the key.
    let spec = write_spec(
        tmp.path(),
        "n_nodes = 10\nruns = 5\nsensor.q = 0.9\nsensor.r = 0.5\n",
    );
    let out = bin()
        .args(["run", "--spec"])
        .arg(&spec)
        .arg("--out")
        .arg(tmp.path().join("o2"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("sensor.q"), "{}", stderr(&out));

    // Missing file.
    let out = bin()
        .args(["run", "--spec", "/nonexistent.toml"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Bad --set override.
    let spec = write_spec(tmp.path(), SMALL_SPEC);
    let out = bin()
        .args(["run", "--spec"])
        .arg(&spec)
        .args(["--set", "attack.strategy=sideways"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("attack.strategy"), "{}", stderr(&out));
}

#[test]
fn set_overrides_change_the_effective_config() {
    let tmp = tempfile::tempdir().unwrap();
    let spec = write_spec(tmp.path(), SMALL_SPEC);
    let out_dir = tmp.path().join("out");
    let out = bin()
        .args(["run", "--spec"])
        .arg(&spec)
        .arg("--out")
        .arg(&out_dir)
        .args(["--seed", "99", "--runs", "50"])
        .args([
            "--set",
            "attack.n_star=5",
            "--set",
            "output.formats=[\"csv\"]",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out_dir.join("manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["config"]["seed"], 99);
    assert_eq!(manifest["config"]["runs"], 50);
    assert_eq!(manifest["config"]["attack"]["n_star"][0], 5);
    assert!(out_dir.join("nodes_q0.01_r0.1_tau0_nstar5.csv").is_file());
    assert!(!out_dir.join("nodes_q0.01_r0.1_tau0_nstar5.svg").exists());
}

#[test]
fn oracle_check_exit_codes() {
    let out = bin()
        .args([
            "oracle-check",
            "--n-max",
            "6",
            "--trials",
            "50",
            "--seed",
            "3",
        ])
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let msg = String::from_utf8_lossy(&out.stdout);
    assert!(msg.contains("PASS"), "{msg}");
    assert!(msg.contains("max_deviation"), "{msg}");

    // n_max out of range is a configuration error.
    let out = bin()
        .args(["oracle-check", "--n-max", "30"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Zero trials: vacuous pass with a warning.
    let out = bin()
        .args(["oracle-check", "--trials", "0"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("vacuous"));
}

#[test]
fn attack_beyond_certain_cascade_reports_unit_md() {
    // 150 forced zeros is past the certain-cascade threshold (122) of the
    // q=1e-4, r=0.05, tau=0 sensors: the summary row must read exactly 1.
    let tmp = tempfile::tempdir().unwrap();
    let spec = write_spec(
        tmp.path(),
        r#"
n_nodes = 200
runs = 300
seed = 1
tau = 0.0
sensor.q = 1e-4
sensor.r = 0.05
attack.strategy = "leading"
attack.n_star = 150
"#,
    );
    let out_dir = tmp.path().join("out");
    let out = bin()
        .args(["run", "--spec"])
        .arg(&spec)
        .arg("--out")
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr(&out));
    let summary = std::fs::read_to_string(out_dir.join("summary.csv")).unwrap();
    let row = summary.lines().nth(1).unwrap();
    let md_rate = row.split(',').nth(4).unwrap();
    assert_eq!(md_rate, "1");
}

#[test]
fn jobs_zero_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let spec = write_spec(tmp.path(), SMALL_SPEC);
    let out = bin()
        .args(["run", "--spec"])
        .arg(&spec)
        .args(["--jobs", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
