//! Runs the `qcomm` binary end to end.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use qcomm::problem::{CoefficientSpec, MatrixFile, ProblemFile, QSpec, SCHEMA};
use qcomm::report::SolutionSetReport;
use qcomm::wire::{matrix_to_wire, to_wire, Complex};
use qcomm_core::{CMatrix, C64};
use tempfile::TempDir;

fn qcomm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcomm"))
        .args(args)
        .env_remove("QCOMM_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> String {
    let path: PathBuf = dir.path().join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

fn write_json<T: serde::Serialize>(dir: &TempDir, name: &str, value: &T) -> String {
    write(dir, name, &serde_json::to_string(value).unwrap())
}

fn matrix_file(m: &CMatrix) -> MatrixFile {
    MatrixFile {
        schema: SCHEMA.into(),
        description: None,
        matrix: Some(matrix_to_wire(m)),
        matrices: None,
    }
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn wire_reals(xs: &[f64]) -> Vec<Complex> {
    xs.iter().map(|&x| Complex(re(x))).collect()
}

fn to_matrix(rows: &[Vec<Complex>]) -> CMatrix {
    let data: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|z| z.0).collect()).collect();
    CMatrix::from_rows(&data).unwrap()
}

fn expected_solutions(name: &str) -> Vec<CMatrix> {
    let file: MatrixFile = serde_json::from_str(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap();
    file.matrices.unwrap().iter().map(|m| to_matrix(m)).collect()
}

fn assert_same_set(found: &[CMatrix], expected: &[CMatrix], tol: f64) {
    assert_eq!(found.len(), expected.len());
    for e in expected {
        let best = found.iter().map(|x| x.max_abs_diff(e)).fold(f64::INFINITY, f64::min);
        assert!(best <= tol, "no solution within {tol} of {e:?} (closest {best:e})");
    }
}

fn solve_json(args: &[&str]) -> SolutionSetReport {
    let out = qcomm(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn weighted_example_matches_printed_solutions() {
    for name in ["weighted-circulant", "paper-3.1"] {
        let report = solve_json(&["example", name, "--json"]);
        assert_eq!(report.provenance, "weighted-circulant");
        assert_eq!(report.counts, vec![2, 1, 2]);
        assert_eq!(report.total, 4);
        let xs: Vec<CMatrix> = report.solutions.iter().map(|s| to_matrix(&s.x)).collect();
        assert_same_set(&xs, &expected_solutions("weighted-circulant.solutions.json"), 1e-9);
    }
}

#[test]
fn companion_example_matches_printed_solutions() {
    let report = solve_json(&["example", "paper-3.2", "--json"]);
    assert_eq!(report.provenance, "companion");
    assert_eq!(report.counts, vec![2, 1, 2]);
    let xs: Vec<CMatrix> = report.solutions.iter().map(|s| to_matrix(&s.x)).collect();
    assert_same_set(&xs, &expected_solutions("companion.solutions.json"), 1e-9);
}

#[test]
fn example_text_report_lists_scalar_polynomials() {
    let out = qcomm(&["example", "companion"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in ["g_1(x) = x^2 - 5x + 4", "g_2(x) = x^2 + 2x + 1", "g_3(x) = x^2 - 3x + 2", "total: 4"] {
        assert!(text.contains(line), "missing {line:?} in\n{text}");
    }
    assert!(text.contains("[ 7   -8  2]"), "{text}");
}

#[test]
fn solve_file_matches_built_in_example() {
    let from_file = qcomm(&["solve", &fixture("weighted-circulant.json"), "--json"]);
    let built_in = qcomm(&["example", "weighted-circulant", "--json"]);
    assert_eq!(from_file.stdout, built_in.stdout);
}

#[test]
fn linear_equation_with_q_gives_minus_q() {
    let dir = TempDir::new().unwrap();
    let q = CMatrix::from_real_rows(&[[1.0, 2.0, 0.0], [0.0, 3.0, 1.0], [1.0, 0.0, -1.0]]).unwrap();
    let problem = ProblemFile {
        schema: SCHEMA.into(),
        description: None,
        q: QSpec::Matrix(matrix_to_wire(&q)),
        degree: 1,
        coefficients: vec![CoefficientSpec::Matrix(matrix_to_wire(&q))],
        options: Default::default(),
    };
    let path = write_json(&dir, "p.json", &problem);
    let report = solve_json(&["solve", &path, "--json"]);
    assert_eq!(report.solutions.len(), 1);
    let x = to_matrix(&report.solutions[0].x);
    assert!(x.max_abs_diff(&(-&q)) < 1e-10);
}

#[test]
fn check_accepts_example_solution_and_rejects_zero() {
    let dir = TempDir::new().unwrap();
    let first = CMatrix::from_real_rows(&[[7.0, -8.0, 2.0], [12.0, -15.0, 4.0], [24.0, -32.0, 9.0]]).unwrap();
    let good = write_json(&dir, "good.json", &matrix_file(&first));
    let out = qcomm(&["check", &fixture("companion.json"), &good]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).ends_with("PASS\n"));

    // With X = O the residual is ||A_2||_F, and A_2 = 11 I - 9 pi + 2 pi^2.
    let pi = CMatrix::from_real_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [6.0, -11.0, 6.0]]).unwrap();
    let a2 = &(&CMatrix::identity(3).scale(re(11.0)) - &pi.scale(re(9.0))) + &(&pi * &pi).scale(re(2.0));
    let zero = write_json(&dir, "zero.json", &matrix_file(&CMatrix::zeros(3, 3)));
    let out = qcomm(&["check", &fixture("companion.json"), &zero, "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let residual = report["candidates"][0]["residual"].as_f64().unwrap();
    assert!((residual - a2.frobenius()).abs() <= 1e-10 * a2.frobenius());
    assert_eq!(report["pass"], false);
}

#[test]
fn check_match_set() {
    let out = qcomm(&[
        "check",
        &fixture("weighted-circulant.json"),
        &fixture("weighted-circulant.solutions.json"),
        "--match-set",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("set match: 4 candidates, 4 solutions"));

    // A proper subset of the solutions passes the residual check but not the set match.
    let dir = TempDir::new().unwrap();
    let mut subset: MatrixFile =
        serde_json::from_str(&std::fs::read_to_string(fixture("companion.solutions.json")).unwrap()).unwrap();
    subset.matrices.as_mut().unwrap().pop();
    let path = write_json(&dir, "subset.json", &subset);
    assert_eq!(qcomm(&["check", &fixture("companion.json"), &path]).status.code(), Some(0));
    let out = qcomm(&["check", &fixture("companion.json"), &path, "--match-set"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("3 candidates but 4 solutions"));
}

#[test]
fn check_planted_solution() {
    // Q = S diag(1, -1, 2i) S^-1 with X = S diag(0.5, 1, -1) S^-1 planted as a
    // root of X^2 + A_1 X + A_2 where A_1 = -(X + Y), A_2 = XY, Y = S diag(2, 3, 1) S^-1.
    let s = CMatrix::from_real_rows(&[[2.0, 0.5, 0.0], [0.3, 1.5, -0.2], [0.0, 0.4, 1.8]]).unwrap();
    let s_inv = qcomm_core::linalg::inverse(&s).unwrap();
    let member = |d: &[C64]| &(&s * &CMatrix::from_diag(d)) * &s_inv;
    let q = member(&[re(1.0), re(-1.0), C64::new(0.0, 2.0)]);
    let x = member(&[re(0.5), re(1.0), re(-1.0)]);
    let y = member(&[re(2.0), re(3.0), re(1.0)]);
    let problem = ProblemFile {
        schema: SCHEMA.into(),
        description: Some("planted".into()),
        q: QSpec::Matrix(matrix_to_wire(&q)),
        degree: 2,
        coefficients: vec![
            CoefficientSpec::Matrix(matrix_to_wire(&(-&(&x + &y)))),
            CoefficientSpec::Matrix(matrix_to_wire(&(&x * &y))),
        ],
        options: Default::default(),
    };
    let dir = TempDir::new().unwrap();
    let p = write_json(&dir, "p.json", &problem);
    let c = write_json(&dir, "x.json", &matrix_file(&x));
    let out = qcomm(&["check", &p, &c]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn check_rejects_wrong_dimension() {
    let dir = TempDir::new().unwrap();
    let c = write_json(&dir, "x.json", &matrix_file(&CMatrix::identity(2)));
    let out = qcomm(&["check", &fixture("companion.json"), &c]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("dimension mismatch"));
}

fn weighted_q_file(dir: &TempDir) -> String {
    write(dir, "q.json", r#"{"schema": "qcomm/1", "q": {"weighted_circulant": [1, 1, 8]}}"#)
}

#[test]
fn repr_of_q_squared() {
    let dir = TempDir::new().unwrap();
    let qfile = weighted_q_file(&dir);
    let q = CMatrix::from_real_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [8.0, 0.0, 0.0]]).unwrap();
    let a = write_json(&dir, "a.json", &matrix_file(&(&q * &q)));
    let out = qcomm(&["repr", &qfile, &a, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: qcomm::commands::ReprReport = serde_json::from_str(&stdout(&out)).unwrap();
    let expected = [0.0, 0.0, 1.0];
    for (got, want) in report.coefficients.iter().zip(expected) {
        assert!((got.0 - re(want)).norm() < 1e-12);
    }
    assert!(report.reconstruction_residual < 1e-12);
}

#[test]
fn repr_recovers_example_coefficients() {
    // A is built from the solver's own coefficient matrix of the example, and
    // its representation polynomial must equal the fixture's.
    let dir = TempDir::new().unwrap();
    let problem: ProblemFile = serde_json::from_str(&std::fs::read_to_string(fixture("weighted-circulant.json")).unwrap()).unwrap();
    let CoefficientSpec::ReprPoly(a_coeffs) = &problem.coefficients[0] else {
        panic!("fixture stores representation polynomials");
    };
    let q = CMatrix::from_real_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [8.0, 0.0, 0.0]]).unwrap();
    let a = &(&CMatrix::identity(3).scale(a_coeffs[0].0) + &q.scale(a_coeffs[1].0)) + &(&q * &q).scale(a_coeffs[2].0);
    let afile = write_json(&dir, "a.json", &matrix_file(&a));
    let out = qcomm(&["repr", &weighted_q_file(&dir), &afile, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: qcomm::commands::ReprReport = serde_json::from_str(&stdout(&out)).unwrap();
    for (got, want) in report.coefficients.iter().zip(a_coeffs) {
        assert!((got.0 - want.0).norm() < 1e-12);
    }
    // D^-1 (-5, 2, -3) has a_0 = -2 since the three eigenvalues are 2 w^j.
    assert!((report.coefficients[0].0 - re(-2.0)).norm() < 1e-12);
}

#[test]
fn repr_rejects_non_member() {
    let dir = TempDir::new().unwrap();
    let mut e = CMatrix::zeros(3, 3);
    e[(0, 0)] = re(1.0);
    let afile = write_json(&dir, "a.json", &matrix_file(&e));
    let out = qcomm(&["repr", &weighted_q_file(&dir), &afile]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("||AQ - QA||_F"), "{}", stderr(&out));
}

#[test]
fn diag_of_weighted_circulant() {
    let dir = TempDir::new().unwrap();
    let out = qcomm(&["diag", &weighted_q_file(&dir), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: qcomm::commands::DiagReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.provenance, "weighted-circulant");
    let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
    for (got, want) in report.eigenvalues.iter().zip([re(2.0), w * w * 2.0, w * 2.0]) {
        assert!((got.0 - want).norm() < 1e-14);
    }
    assert!(report.verification_residual < 1e-12);
}

#[test]
fn diag_of_diagonal_matrix_is_trivial() {
    let dir = TempDir::new().unwrap();
    let q = write(&dir, "q.json", r#"{"schema": "qcomm/1", "q": {"matrix": [[1, 0, 0], [0, 2, 0], [0, 0, 3]]}}"#);
    let out = qcomm(&["diag", &q, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: qcomm::commands::DiagReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.provenance, "generic");
    assert!(to_matrix(&report.t).max_abs_diff(&CMatrix::identity(3)) < 1e-12);
    for (got, want) in report.eigenvalues.iter().zip([1.0, 2.0, 3.0]) {
        assert!((got.0 - re(want)).norm() < 1e-12);
    }
}

#[test]
fn diag_text_prints_companion_and_vandermonde() {
    let out = qcomm(&["diag", &fixture("companion.json")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("provenance: companion"));
    assert!(text.contains("[6  -11  6]"), "{text}");
    assert!(text.contains("[1  4  9]"), "{text}");
}

#[test]
fn validation_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("garbage.json", "{not json"),
        ("schema.json", r#"{"schema": "other/9", "q": {"companion": [1, 2]}, "degree": 1, "coefficients": [{"repr_poly": [1]}]}"#),
        ("repeat.json", r#"{"schema": "qcomm/1", "q": {"matrix": [[1, 0], [0, 1]]}, "degree": 1, "coefficients": [{"repr_poly": [1]}]}"#),
        ("degree.json", r#"{"schema": "qcomm/1", "q": {"companion": [1, 2]}, "degree": 2, "coefficients": [{"repr_poly": [1]}]}"#),
        ("zero-degree.json", r#"{"schema": "qcomm/1", "q": {"companion": [1, 2]}, "degree": 0, "coefficients": []}"#),
        ("ragged.json", r#"{"schema": "qcomm/1", "q": {"matrix": [[1, 0], [0]]}, "degree": 1, "coefficients": [{"repr_poly": [1]}]}"#),
        ("empty.json", r#"{"schema": "qcomm/1", "q": {"matrix": []}, "degree": 1, "coefficients": [{"repr_poly": [1]}]}"#),
        ("weight.json", r#"{"schema": "qcomm/1", "q": {"weighted_circulant": [1, 0]}, "degree": 1, "coefficients": [{"repr_poly": [1]}]}"#),
        ("scalar.json", r#"{"schema": "qcomm/1", "q": {"companion": [[1, 2, 3]]}, "degree": 1, "coefficients": [{"repr_poly": [1]}]}"#),
        ("two-q.json", r#"{"schema": "qcomm/1", "q": {"companion": [1], "circulant": [1]}, "degree": 1, "coefficients": [{"repr_poly": [1]}]}"#),
        ("coords.json", r#"{"schema": "qcomm/1", "q": {"companion": [1, 2]}, "degree": 1, "coefficients": [{"diag_coords": [1]}]}"#),
        ("member.json", r#"{"schema": "qcomm/1", "q": {"companion": [1, 2]}, "degree": 1, "coefficients": [{"matrix": [[0, 1], [0, 0]]}]}"#),
        ("tol.json", r#"{"schema": "qcomm/1", "q": {"companion": [1, 2]}, "degree": 1, "coefficients": [{"repr_poly": [1]}], "options": {"residual_tol": -1}}"#),
        ("unknown.json", r#"{"schema": "qcomm/1", "q": {"companion": [1, 2]}, "degree": 1, "coefficients": [{"repr_poly": [1]}], "extra": 1}"#),
    ];
    for (name, text) in cases {
        let path = write(&dir, name, text);
        let out = qcomm(&["solve", &path]);
        assert_eq!(out.status.code(), Some(2), "{name}: {}", stderr(&out));
        assert!(stderr(&out).starts_with("error: "), "{name}: {}", stderr(&out));
    }
    let missing = dir.path().join("missing.json").display().to_string();
    assert_eq!(qcomm(&["solve", &missing]).status.code(), Some(2));
    assert_eq!(qcomm(&["example", "unknown"]).status.code(), Some(2));
}

#[test]
fn cap_and_truncation() {
    let out = qcomm(&["example", "companion", "--cap", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("exceeds enumeration cap"));
    let out = qcomm(&["example", "companion", "--cap", "3", "--truncate", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let report: SolutionSetReport = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report.solutions.len(), 3);
    assert!(report.truncated);
    assert!(stderr(&out).contains("truncated"));
}

#[test]
fn colexicographic_order_flag() {
    let report = solve_json(&["example", "companion", "--json", "--order", "colex"]);
    let idx: Vec<Vec<usize>> = report.solutions.iter().map(|s| s.indices.clone()).collect();
    assert_eq!(idx, vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 0, 1], vec![1, 0, 1]]);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        vec!["example", "weighted-circulant"],
        vec!["example", "companion", "--json"],
        vec!["diag", "fixtures/companion.json"],
    ] {
        let args: Vec<String> = args
            .iter()
            .map(|a| a.strip_prefix("fixtures/").map_or_else(|| a.to_string(), fixture))
            .collect();
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = qcomm(&args);
        let second = qcomm(&args);
        assert_eq!(first.stdout, second.stdout);
        let threaded = Command::new(env!("CARGO_BIN_EXE_qcomm"))
            .args(&args)
            .env("QCOMM_THREADS", "1")
            .output()
            .unwrap();
        assert_eq!(first.stdout, threaded.stdout);
    }
}

#[test]
fn invalid_thread_count_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_qcomm"))
        .args(["example", "companion"])
        .env("QCOMM_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("QCOMM_THREADS"));
}

#[test]
fn real_scalars_and_pairs_are_interchangeable() {
    let dir = TempDir::new().unwrap();
    let plain = write(
        &dir,
        "plain.json",
        r#"{"schema": "qcomm/1", "q": {"circulant": [0, 1, 0, 0]}, "degree": 2, "coefficients": [{"repr_poly": [0, 1]}, {"diag_coords": [-1, -1, -1, -1]}]}"#,
    );
    let problem = ProblemFile {
        schema: SCHEMA.into(),
        description: None,
        q: QSpec::Circulant(wire_reals(&[0.0, 1.0, 0.0, 0.0])),
        degree: 2,
        coefficients: vec![
            CoefficientSpec::ReprPoly(wire_reals(&[0.0, 1.0])),
            CoefficientSpec::DiagCoords(to_wire(&[re(-1.0); 4])),
        ],
        options: Default::default(),
    };
    let pairs = write_json(&dir, "pairs.json", &problem);
    let a = qcomm(&["solve", &plain, "--json"]);
    let b = qcomm(&["solve", &pairs, "--json"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let report: SolutionSetReport = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(report.provenance, "circulant");
    assert_eq!(report.total, 16);
}
