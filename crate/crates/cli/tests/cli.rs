//! End-to-end tests driving the `bieval` binary: generation determinism,
//! evaluation output, verification exit codes, and bench CSV shape.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bieval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bieval"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn write(path: &Path, content: &str) {
    fs::write(path, content).unwrap();
}

const X_PLUS_Y: &str = "modulus 7\nn 2\nm 2\ncoeffs\n0 1\n1 0\npoints 4\n0 1\n1 2\n2 3\n3 4\n";

#[test]
fn gen_is_deterministic_and_parses_back() {
    let a = bieval(&[
        "gen",
        "--n",
        "2",
        "--m",
        "2",
        "--modulus",
        "7",
        "--seed",
        "1",
    ]);
    let b = bieval(&[
        "gen",
        "--n",
        "2",
        "--m",
        "2",
        "--modulus",
        "7",
        "--seed",
        "1",
    ]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b), "same seed, identical files");
    let text = stdout(&a);
    assert!(text.contains("modulus 7"));
    assert!(text.contains("points 4"));

    let c = bieval(&[
        "gen",
        "--n",
        "2",
        "--m",
        "2",
        "--modulus",
        "7",
        "--seed",
        "2",
    ]);
    assert_ne!(stdout(&a), stdout(&c), "different seed, different instance");
}

#[test]
fn gen_rejects_composite_modulus() {
    let out = bieval(&["gen", "--n", "2", "--m", "2", "--modulus", "15"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not prime"));
}

#[test]
fn gen_grid_mode_emits_cartesian_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.txt");
    let out = bieval(&[
        "gen",
        "--n",
        "2",
        "--m",
        "3",
        "--modulus",
        "101",
        "--seed",
        "4",
        "--points-mode",
        "grid",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&path).unwrap();
    let points: Vec<(u64, u64)> = text
        .lines()
        .skip_while(|l| !l.starts_with("points"))
        .skip(1)
        .map(|l| {
            let mut it = l.split_whitespace().map(|t| t.parse().unwrap());
            (it.next().unwrap(), it.next().unwrap())
        })
        .collect();
    assert_eq!(points.len(), 6);
    // Row-major 2x3 grid: two x values, each paired with the same three ys.
    assert_eq!(points[0].0, points[1].0);
    assert_eq!(points[0].0, points[2].0);
    assert_eq!(points[3].0, points[4].0);
    assert_ne!(points[0].0, points[3].0);
    assert_eq!(points[0].1, points[3].1);
}

#[test]
fn eval_prints_values_in_input_order() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.txt");
    write(&path, X_PLUS_Y);
    for method in ["naive", "grid", "fast"] {
        let out = bieval(&["eval", path.to_str().unwrap(), "--method", method]);
        assert!(out.status.success(), "method {method}");
        assert_eq!(stdout(&out), "1\n3\n5\n0\n", "method {method}");
    }
}

#[test]
fn eval_handles_empty_point_list() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.txt");
    write(&path, "modulus 7\nn 1\nm 1\ncoeffs\n3\npoints 0\n");
    let out = bieval(&["eval", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "");
}

#[test]
fn eval_fast_matches_naive_on_shared_x_instance() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("shared.txt");
    let gen = bieval(&[
        "gen",
        "--n",
        "3",
        "--m",
        "3",
        "--modulus",
        "65537",
        "--seed",
        "11",
        "--points-mode",
        "shared-x",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let naive = bieval(&["eval", path.to_str().unwrap(), "--method", "naive"]);
    let fast = bieval(&["eval", path.to_str().unwrap(), "--method", "fast"]);
    assert_eq!(stdout(&naive), stdout(&fast));
    assert!(!stdout(&naive).is_empty());
}

#[test]
fn eval_reports_parse_errors_with_line_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.txt");
    write(&path, "modulus 7\nn 2\nm 2\ncoeffs\n0 1\nbogus\npoints 0\n");
    let out = bieval(&["eval", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 6"));
}

#[test]
fn verify_agrees_on_valid_instances() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inst.txt");
    write(&path, X_PLUS_Y);
    let out = bieval(&["verify", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "OK: 3 methods agree on 4 values\n");

    // A grid instance exercises the duplicate-x shear path of `fast`.
    let grid_path = dir.path().join("grid.txt");
    let gen = bieval(&[
        "gen",
        "--n",
        "4",
        "--m",
        "4",
        "--modulus",
        "65537",
        "--seed",
        "3",
        "--points-mode",
        "grid",
        "--out",
        grid_path.to_str().unwrap(),
    ]);
    assert!(gen.status.success());
    let out = bieval(&["verify", grid_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "OK: 3 methods agree on 16 values\n");
}

#[test]
fn verify_expect_file_detects_corruption() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("inst.txt");
    write(&inst, X_PLUS_Y);
    let good = dir.path().join("good.txt");
    write(&good, "1\n3\n5\n0\n");
    let out = bieval(&[
        "verify",
        inst.to_str().unwrap(),
        "--expect",
        good.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let bad = dir.path().join("bad.txt");
    write(&bad, "1\n3\n6\n0\n");
    let out = bieval(&[
        "verify",
        inst.to_str().unwrap(),
        "--expect",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("index 2"));
}

#[test]
fn bench_emits_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("bench.csv");
    let args = [
        "bench",
        "--sizes",
        "2x2,4x4",
        "--modulus",
        "65537",
        "--methods",
        "naive,fast",
        "--reps",
        "1",
        "--seed",
        "5",
        "--out",
        csv_path.to_str().unwrap(),
    ];
    let out = bieval(&args);
    assert!(out.status.success());
    let csv = fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("method,n,m,N,modulus,seed,wall_time_ns"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    for row in &rows {
        assert_eq!(row.split(',').count(), 7);
    }
    let summary = String::from_utf8_lossy(&out.stderr);
    assert!(summary.contains("doubling naive 2x2 -> 4x4"));
    assert!(summary.contains("crossover:"));

    // Identical seeds and flags: identical CSV apart from the timings.
    let strip_times = |text: &str| -> Vec<String> {
        text.lines()
            .map(|l| {
                l.rsplit_once(',')
                    .map_or(l.to_string(), |(head, _)| head.to_string())
            })
            .collect()
    };
    let out2 = bieval(&args);
    assert!(out2.status.success());
    let csv2 = fs::read_to_string(&csv_path).unwrap();
    assert_eq!(strip_times(&csv), strip_times(&csv2));
}
