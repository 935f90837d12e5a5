use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use catalan_ops::linalg::CMatrix;
use num_complex::Complex64;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catalan-ops"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn write_matrix(dir: &Path, name: &str, m: &CMatrix) -> String {
    let p = dir.join(name);
    fs::write(&p, m.to_text()).unwrap();
    p.display().to_string()
}

fn read_solution(dir: &Path) -> CMatrix {
    CMatrix::parse_text(&fs::read_to_string(dir.join("solution.txt")).unwrap()).unwrap()
}

#[test]
fn table1_double_prefix_and_determinism() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for d in [&a, &b] {
        let o = run(&["table1", "--n", "10", "--no-timings", "--out", d.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let csv = fs::read_to_string(a.join("table1.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("k,newton_res,catalan4_res"));
    let first: Vec<f64> = lines.next().unwrap().split(',').skip(1).map(|x| x.parse().unwrap()).collect();
    assert!((first[0] - 8.45274e-2).abs() < 5e-6);
    assert!((first[1] - 1.03079e-2).abs() < 5e-7);
    for f in ["table1.csv", "table1_newton.json", "table1_catalan4.json"] {
        assert_eq!(fs::read(a.join(f)).unwrap(), fs::read(b.join(f)).unwrap(), "{f}");
    }
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(a.join("table1_newton.json")).unwrap()).unwrap();
    assert_eq!(json["method"], "newton");
    assert_eq!(json["n"], 10);
    assert!(json["steps"][0]["res"].is_number());
    assert!(a.join("table1.manifest.json").exists());
}

#[test]
fn table1_rejects_small_n() {
    let tmp = tempfile::tempdir().unwrap();
    let o = run(&["table1", "--n", "5", "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(code(&o), 2);
}

#[test]
fn solve_nilpotent_series() {
    let tmp = tempfile::tempdir().unwrap();
    let t = CMatrix::from_real_rows(&[&[0.0, 0.3], &[0.0, 0.0]]).unwrap();
    let path = write_matrix(tmp.path(), "t.txt", &t);
    let o = run(&["solve", "--matrix", &path, "--method", "series", "--out", tmp.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let y = read_solution(tmp.path());
    assert_eq!(y, CMatrix::from_real_rows(&[&[1.0, 0.3], &[0.0, 1.0]]).unwrap());
}

#[test]
fn solve_catalan_agrees_with_series() {
    let tmp = tempfile::tempdir().unwrap();
    let t = CMatrix::from_real_rows(&[&[0.0, 0.1], &[0.1, 0.0]]).unwrap();
    let path = write_matrix(tmp.path(), "t.txt", &t);
    let id = write_matrix(tmp.path(), "i.txt", &CMatrix::identity(2));
    let s_dir = tmp.path().join("s");
    let c_dir = tmp.path().join("c");
    let o = run(&["solve", "--matrix", &path, "--method", "series", "--out", s_dir.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let o = run(&[
        "solve", "--matrix", &path, "--method", "catalan:2", "--y0", &id, "--out",
        c_dir.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let diff = (&read_solution(&s_dir) - &read_solution(&c_dir)).max_abs();
    assert!(diff <= 1e-11, "{diff}");
}

#[test]
fn solve_exit_codes() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    let t = CMatrix::from_diag(&[Complex64::new(0.1, 0.0), Complex64::new(0.2, 0.0)]);
    let path = write_matrix(tmp.path(), "t.txt", &t);
    assert_eq!(code(&run(&["solve", "--matrix", &path, "--method", "catalan:0", "--out", out])), 2);
    assert_eq!(code(&run(&["solve", "--matrix", &path, "--form", "other", "--out", out])), 2);
    assert_eq!(code(&run(&["solve", "--matrix", "/nonexistent/t.txt", "--out", out])), 3);
    let bad = tmp.path().join("bad.txt");
    fs::write(&bad, "2 2\n1 x\n0 1\n").unwrap();
    assert_eq!(code(&run(&["solve", "--matrix", bad.to_str().unwrap(), "--out", out])), 3);
    let o = run(&["solve", "--matrix", &path, "--max-iters", "1", "--out", out]);
    assert_eq!(code(&o), 4);
    assert!(tmp.path().join("solve.json").exists());
    let o = run(&["solve", "--matrix", &path, "--method", "newton", "--out", out]);
    assert_eq!(code(&o), 0);
    let edge = write_matrix(tmp.path(), "edge.txt", &CMatrix::identity(2).scale_re(0.25));
    assert_eq!(code(&run(&["solve", "--matrix", &edge, "--method", "quadrature", "--out", out])), 4);
}

#[test]
fn boundary_rows_and_geometry() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().to_str().unwrap();
    assert_eq!(code(&run(&["boundary", "--samples", "8", "--out", out])), 0);
    let csv = fs::read_to_string(tmp.path().join("boundary.csv")).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.iter().filter(|r| r[3] == "sigma_c").count(), 8);
    assert_eq!(rows.iter().filter(|r| r[3] == "omega").count(), 8);
    let origin = rows
        .iter()
        .find(|r| r[3] == "sigma_c" && r[0].parse::<f64>().unwrap() == 0.0)
        .expect("theta = 0 row");
    assert_eq!(origin[1].parse::<f64>().unwrap(), 2.0);
    assert_eq!(origin[2].parse::<f64>().unwrap(), 0.0);

    let m = 2048;
    assert_eq!(code(&run(&["boundary", "--samples", "2048", "--curves", "sigma", "--out", out])), 0);
    let csv = fs::read_to_string(tmp.path().join("boundary.csv")).unwrap();
    let pts: Vec<Complex64> = csv
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            Complex64::new(f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect();
    assert_eq!(pts.len(), m);
    for w in pts.windows(2) {
        assert!((w[1].norm() - w[0].norm()).abs() < 10.0 / m as f64);
    }
    for z in &pts {
        assert!((z - 1.0).norm() / z.norm_sqr() <= 0.25 + 1e-9);
    }
    assert_eq!(code(&run(&["boundary", "--curves", "nope", "--out", out])), 2);
}

#[test]
fn verify_suites() {
    let o = run(&["verify", "--suite", "sequence", "--seed", "3"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("PASS sequence/backward_difference"));
    let o = run(&["verify", "--suite", "scalar", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("PASS scalar/weighted_sum_is_two"));
    assert_eq!(code(&run(&["verify", "--suite", "bogus"])), 2);
}

#[test]
fn verify_all_is_reproducible() {
    let tmp = tempfile::tempdir().unwrap();
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    for d in [&a, &b] {
        let o = run(&["verify", "--seed", "11", "--out", d.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    }
    let ra = fs::read(a.join("verify_report.txt")).unwrap();
    assert_eq!(ra, fs::read(b.join("verify_report.txt")).unwrap());
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(a.join("verify.manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 11);
}
