use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use squeezed_bath::cli::figures::{crossing_marker_px, px_to_x};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    std::fs::read_to_string(path).unwrap()
}

fn sqbath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqbath")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

fn column(csv: &str, name: &str) -> Vec<f64> {
    let mut lines = csv.lines();
    let idx = lines.next().unwrap().split(',').position(|h| h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

#[test]
fn evolve_headers_match_golden() {
    let cfg = data("vacuum.json");
    let plain = stdout(&sqbath(&["evolve", "--config", cfg.to_str().unwrap()]));
    assert_eq!(plain.lines().next().unwrap(), golden("evolve_header.csv").trim_end());
    let with_oracle = stdout(&sqbath(&["evolve", "--config", cfg.to_str().unwrap(), "--oracle", "--dim", "8"]));
    assert_eq!(with_oracle.lines().next().unwrap(), golden("evolve_header_oracle.csv").trim_end());
}

#[test]
fn vacuum_series_matches_golden() {
    let cfg = data("vacuum.json");
    let csv = stdout(&sqbath(&["evolve", "--config", cfg.to_str().unwrap()]));
    assert_eq!(csv, golden("vacuum.csv"));
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = data("pat_warm.json");
    let a = sqbath(&["evolve", "--config", cfg.to_str().unwrap()]);
    let b = sqbath(&["evolve", "--config", cfg.to_str().unwrap()]);
    assert_eq!(stdout(&a), stdout(&b));

    let first = dir.path().join("first");
    let second = dir.path().join("second");
    for out in [&first, &second] {
        stdout(&sqbath(&["figures", "--out", out.to_str().unwrap()]));
    }
    for name in ["figure1.svg", "figure2.svg"] {
        let x = std::fs::read(first.join(name)).unwrap();
        let y = std::fs::read(second.join(name)).unwrap();
        assert!(!x.is_empty());
        assert_eq!(x, y, "{name}");
    }
}

#[test]
fn written_file_equals_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = data("thermal_ideal.json");
    let out = dir.path().join("series.csv");
    let printed = stdout(&sqbath(&["evolve", "--config", cfg.to_str().unwrap()]));
    stdout(&sqbath(&["evolve", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]));
    assert_eq!(std::fs::read_to_string(out).unwrap(), printed);
}

#[test]
fn thermal_depth_column_follows_closed_form() {
    let cfg = data("thermal_ideal.json");
    let csv = stdout(&sqbath(&["evolve", "--config", cfg.to_str().unwrap()]));
    let gt = column(&csv, "gamma_t");
    let tau = column(&csv, "tau_m");
    assert_eq!(gt.len(), 201);
    for (g, t) in gt.iter().zip(&tau) {
        let expected = (2f64.sqrt() * (1.0 - (-2.0 * g).exp()) - 1.0).max(0.0);
        assert!((t - expected).abs() <= 1e-12, "{g}: {t} vs {expected}");
    }
}

#[test]
fn photon_added_thermal_depth_changes_sign_once() {
    let cfg = data("pat_warm.json");
    let csv = stdout(&sqbath(&["evolve", "--config", cfg.to_str().unwrap()]));
    let gt = column(&csv, "gamma_t");
    let raw = column(&csv, "tau_m_raw");
    let flips: Vec<f64> =
        gt.windows(2).zip(raw.windows(2)).filter(|(_, r)| r[0] > 0.0 && r[1] <= 0.0).map(|(g, _)| g[1]).collect();
    assert_eq!(flips.len(), 1);
    assert!((0.23..=0.24).contains(&flips[0]), "{flips:?}");
}

#[test]
fn transition_times_for_reference_scenarios() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (r#"{"kind": "thermal", "nbar": 1.0}"#, r#"{"n": 1.0, "m": -1.4142135623730951}"#, 0.6139735886),
        (
            r#"{"kind": "squeezed_coherent", "amplitude": [1.0, 0.0], "mu": 1.0}"#,
            r#"{"n": 2.0, "m": 1.0}"#,
            0.0673138646,
        ),
        (r#"{"kind": "photon_added_coherent", "amplitude": [1.0, 0.0]}"#, r#"{"n": 2.0, "m": 1.0}"#, 0.2554128119),
        (r#"{"kind": "photon_added_thermal", "nbar": 1.0}"#, r#"{"n": 2.0, "m": 1.0}"#, 0.2278731972),
    ];
    for (i, (state, res, expected)) in cases.iter().enumerate() {
        let cfg =
            write_config(dir.path(), &format!("c{i}.json"), &format!(r#"{{"state": {state}, "reservoir": {res}}}"#));
        let text = stdout(&sqbath(&["transition-time", "--config", &cfg]));
        let line = text.lines().find(|l| l.starts_with("transition_gamma_t:")).unwrap();
        let value: f64 = line.split(':').nth(1).unwrap().trim().parse().unwrap();
        assert!((value - expected).abs() <= 1e-9, "{state}: {value} vs {expected}");
        assert!(text.contains("closed_form_gamma_t:"), "{text}");
    }
}

#[test]
fn transition_immediate_and_none() {
    let dir = tempfile::tempdir().unwrap();
    let coherent = write_config(
        dir.path(),
        "coh.json",
        r#"{"state": {"kind": "coherent", "amplitude": [1.0, 0.0]}, "reservoir": {"n": 1.0, "m": -1.4142135623730951}}"#,
    );
    let text = stdout(&sqbath(&["transition-time", "--config", &coherent]));
    assert!(text.contains("transition_gamma_t: immediate"), "{text}");

    let thermal = write_config(
        dir.path(),
        "th.json",
        r#"{"state": {"kind": "thermal", "nbar": 1.0}, "reservoir": {"n": 1.0, "m": 0.0}}"#,
    );
    let text = stdout(&sqbath(&["transition-time", "--config", &thermal]));
    assert!(text.contains("transition_gamma_t: none"), "{text}");
}

#[test]
fn figure_crossings_read_back_from_pixels() {
    let dir = tempfile::tempdir().unwrap();
    stdout(&sqbath(&["figures", "--out", dir.path().to_str().unwrap()]));
    for (name, expected) in [("figure1.svg", 0.61), ("figure2.svg", 0.23)] {
        let svg = std::fs::read_to_string(dir.path().join(name)).unwrap();
        let cx = crossing_marker_px(&svg).unwrap();
        assert!((px_to_x(cx) - expected).abs() <= 0.01, "{name}: {}", px_to_x(cx));
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad_m = write_config(
        dir.path(),
        "bad.json",
        r#"{"state": {"kind": "thermal", "nbar": 1.0}, "reservoir": {"n": 1.0, "m": 2.0}}"#,
    );
    let out = sqbath(&["evolve", "--config", &bad_m]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());

    let malformed = write_config(dir.path(), "malformed.json", "{\"state\": ");
    assert_eq!(sqbath(&["evolve", "--config", &malformed]).status.code(), Some(2));

    let hot = write_config(
        dir.path(),
        "hot.json",
        r#"{"state": {"kind": "thermal", "nbar": 4.0}, "reservoir": {"n": 1.0, "m": 0.0},
            "time_grid": {"start": 0.0, "stop": 0.1, "step": 0.05}}"#,
    );
    let out = sqbath(&["evolve", "--config", &hot, "--oracle", "--dim", "8"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--dim"));

    let missing = dir.path().join("absent.json");
    assert_eq!(sqbath(&["evolve", "--config", missing.to_str().unwrap()]).status.code(), Some(4));

    let cfg = data("vacuum.json");
    let unwritable = dir.path().join("no/such/dir/out.csv");
    let out = sqbath(&["evolve", "--config", cfg.to_str().unwrap(), "--out", unwritable.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}
