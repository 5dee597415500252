use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn lab(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lab"));
    cmd.args(args);
    match threads {
        Some(t) => cmd.env("LAB_THREADS", t),
        None => cmd.env_remove("LAB_THREADS"),
    };
    cmd.output().expect("lab runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn read(path: &Path) -> String {
    fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn planar_run(out: &Path, threads: Option<&str>) -> Output {
    lab(
        &["theorem-1.2", "--delta", "1e-3", "--n", "300", "--seed", "5", "--out", out.to_str().unwrap()],
        threads,
    )
}

#[test]
fn planar_run_writes_three_files() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("run");
    let res = planar_run(&out, None);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let samples = read(&out.join("samples.csv"));
    let mut lines = samples.lines();
    assert_eq!(lines.next(), Some("index,input,statistic"));
    assert_eq!(lines.count(), 300);
    assert!(read(&out.join("cdf.csv")).starts_with("T,xi_hat\n"));
    let manifest: serde_json::Value = serde_json::from_str(&read(&out.join("manifest.json"))).unwrap();
    assert_eq!(manifest["schema_version"], 1);
    assert_eq!(manifest["config"]["seed"], 5);
    assert!(manifest["rng_algorithm"].as_str().is_some_and(|s| !s.is_empty()));
    for sub in ["horocycle", "reference"] {
        assert!(out.join(sub).join("cdf.csv").exists());
    }
}

#[test]
fn reruns_and_thread_counts_agree() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let c = dir.path().join("c");
    assert_eq!(code(&planar_run(&a, None)), 0);
    assert_eq!(code(&planar_run(&b, None)), 0);
    assert_eq!(code(&planar_run(&c, Some("1"))), 0);
    for file in ["samples.csv", "cdf.csv", "reference/samples.csv", "horocycle/cdf.csv"] {
        let first = read(&a.join(file));
        assert_eq!(first, read(&b.join(file)), "{file} differs on rerun");
        assert_eq!(first, read(&c.join(file)), "{file} differs with one thread");
    }
}

#[test]
fn several_deltas_get_subdirectories() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("run.toml");
    let out = dir.path().join("out");
    fs::write(&cfg, format!("delta = [1e-2, 1e-3]\nn = 50\nout = {:?}\n", out.to_str().unwrap())).unwrap();
    let res = lab(&["theorem-1.2", "--config", cfg.to_str().unwrap()], None);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    assert!(out.join("delta-1e-2/samples.csv").exists());
    assert!(out.join("delta-1e-3/cdf.csv").exists());
}

#[test]
fn oracle_suite_is_clean() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("oracle");
    let res = lab(&["oracle-suite", "--n", "40", "--out", out.to_str().unwrap()], None);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let manifest: serde_json::Value = serde_json::from_str(&read(&out.join("manifest.json"))).unwrap();
    assert_eq!(manifest["summary"]["mismatches"], 0);
}

#[test]
fn small_linear_form_and_surface_runs() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("lf");
    let res = lab(&["theorem-5.5", "--delta", "1e-2", "--n", "30", "--out", out.to_str().unwrap()], None);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    assert!(out.join("companion/cdf.csv").exists());

    let out = dir.path().join("torus");
    let res = lab(&["theorem-1.5", "--delta", "1e-2", "--n", "40", "--out", out.to_str().unwrap()], None);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let manifest: serde_json::Value = serde_json::from_str(&read(&out.join("manifest.json"))).unwrap();
    assert_eq!(manifest["summary"]["alpha"], 1);
    assert!(out.join("reference/samples.csv").exists());
    assert!(out.join("as-printed/samples.csv").exists());
}

#[test]
fn invalid_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("bad");
    let o = out.to_str().unwrap();
    assert_eq!(code(&lab(&["theorem-1.2", "--delta", "2", "--out", o], None)), 2);
    assert_eq!(code(&lab(&["theorem-1.2", "--n", "0", "--out", o], None)), 2);
    assert_eq!(code(&lab(&["theorem-1.4", "--dim-n", "2", "--out", o], None)), 2);
    assert_eq!(code(&lab(&["theorem-1.2", "--n", "10", "--out", o], Some("zero"))), 2);
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "n = 10\nunknown_key = 1\n").unwrap();
    assert_eq!(code(&lab(&["theorem-1.2", "--config", cfg.to_str().unwrap()], None)), 2);
    let res = lab(&["theorem-1.5", "--origami", "h=(1 2)(3);v=(1 3)(2)", "--alpha", "1", "--out", o], None);
    assert_eq!(code(&res), 2);
    assert!(!out.exists());
}

#[test]
fn cap_exceeded_exits_3_without_files() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("cap");
    let res = lab(
        &["theorem-1.4", "--delta", "1e-4", "--n", "20", "--shell-cap", "3", "--out", out.to_str().unwrap()],
        None,
    );
    assert_eq!(code(&res), 3);
    assert!(!out.exists());
}

#[test]
fn plot_overlays_and_validates() {
    let dir = TempDir::new().unwrap();
    let good = dir.path().join("cdf.csv");
    fs::write(&good, "T,xi_hat\n0.5,0.25\n1.0,0.75\n2.0,1.0\n").unwrap();
    let out = dir.path().join("plot");
    let res = lab(&["plot", good.to_str().unwrap(), "--out", out.to_str().unwrap()], None);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let svg = read(&out.join("plot.svg"));
    assert_eq!(svg.matches("stroke-width").count(), 1);
    assert_eq!(read(&out.join("merged.csv")).lines().count(), 4);

    let empty = dir.path().join("empty.csv");
    fs::write(&empty, "").unwrap();
    assert_eq!(code(&lab(&["plot", empty.to_str().unwrap(), "--out", out.to_str().unwrap()], None)), 2);
    let wrong = dir.path().join("wrong.csv");
    fs::write(&wrong, "t,value\n0.5,0.25\n").unwrap();
    assert_eq!(code(&lab(&["plot", wrong.to_str().unwrap(), "--out", out.to_str().unwrap()], None)), 2);
}
