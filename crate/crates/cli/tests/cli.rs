use std::path::PathBuf;
use std::process::{Command, Output};

use tropcram::matrix::parse_matrix;
use tropcram::SMax;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests")
}

fn data(name: &str) -> String {
    dir().join("data").join(name).to_string_lossy().into_owned()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(dir().join("golden").join(name)).unwrap()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tropcram"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn example_run(command: &str, policy: &str) -> Output {
    run(&[
        command,
        &data("signed_a.mat"),
        &data("signed_b.vec"),
        "--policy",
        policy,
        "--trace",
    ])
}

#[test]
fn jacobi_golden_files() {
    for (policy, file) in [
        ("prefer-positive", "jacobi_prefer_positive.txt"),
        ("prefer-negative", "jacobi_prefer_negative.txt"),
    ] {
        let first = example_run("jacobi", policy);
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(stdout(&first), golden(file));
        assert_eq!(first.stdout, example_run("jacobi", policy).stdout);
    }
}

#[test]
fn jacobi_trace_ends_at_the_example_limit() {
    let text = stdout(&example_run("jacobi", "prefer-positive"));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        &lines[1..4],
        &[
            "x1: n(-4) p(1) p(-1)",
            "x2: n(-3) p(1) p(2)",
            "x3: n(0) p(1) p(2)"
        ]
    );
    assert!(text.ends_with("solution: n(0) p(1) p(2)\n"));
}

#[test]
fn gauss_seidel_golden_file() {
    let out = example_run("gauss-seidel", "prefer-positive");
    assert_eq!(stdout(&out), golden("gauss_seidel.txt"));
    assert!(stdout(&out).contains("iterations: 2\n"));
}

#[test]
fn determinant_of_the_example() {
    let out = run(&["det", &data("signed_a.mat")]);
    assert_eq!(stdout(&out), "b(9)\n");
}

#[test]
fn solve_prints_the_status_vocabulary() {
    let out = run(&["solve", &data("signed_a.mat"), &data("signed_b.vec")]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.starts_with("status: balanced_determinant\ndet: b(9)\n"),
        "{text}"
    );
    assert!(text.contains("modulus: 0 1 2\n"));
}

#[test]
fn random_cross_check() {
    let out = run(&[
        "cross-check",
        "random",
        "--n",
        "4",
        "--cases",
        "200",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "OK 200/200\n");
    let unseeded = run(&["cross-check", "random", "--n", "4"]);
    assert_eq!(unseeded.status.code(), Some(1));
}

#[test]
fn file_cross_check_and_transport() {
    let out = run(&["cross-check", &data("rows.mat")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("transport: 6 6 8\n"));
    let t = run(&[
        "cramer-all",
        &data("rows.mat"),
        "--method",
        "transport",
    ]);
    assert_eq!(stdout(&t), "6 6 8\n");
    let j = run(&["cramer-all", &data("rows.mat")]);
    assert_eq!(stdout(&j), "6 6 8\n");
}

#[test]
fn thin_determinant_exits_with_two() {
    let out = run(&["homogeneous", &data("thin_diag.mat")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("status: no_thin_certificate\n"));
    let tie = run(&["homogeneous", &data("tie.mat")]);
    assert_eq!(tie.status.code(), Some(0));
}

#[test]
fn parse_errors_name_the_position() {
    let out = run(&["det", &data("bad.mat")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bad.mat:4:6:"), "{}", stderr(&out));
}

#[test]
fn dimension_mismatch_names_the_files() {
    let out = run(&["solve", &data("tie.mat"), &data("signed_b.vec")]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(
        err.contains("tie.mat") && err.contains("signed_b.vec"),
        "{err}"
    );
}

#[test]
fn printed_matrices_parse_back() {
    let out = run(&["adj", &data("signed_a.mat")]);
    let text = stdout(&out);
    let (name, m) = parse_matrix::<SMax>(&text).unwrap();
    assert_eq!(name, "smax");
    assert_eq!(tropcram::matrix::format_matrix("smax", &m), text);
}

#[test]
fn geometry_commands() {
    let through = run(&["hyperplane-through", &data("points.mat")]);
    assert_eq!(
        stdout(&through),
        "params: t1(0) t1(0) t1(0)\nunique: true\n"
    );
    let meet = run(&["meet", &data("planes.mat")]);
    assert!(stdout(&meet).starts_with("pattern: +1 +1 +1\npoint: 0 3 2\n"));
}

#[test]
fn brute_force_bound_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_tropcram"))
        .args(["per", &data("signed_a.mat")])
        .env("TROPCRAM_BRUTE_BOUND", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("bound 2"));
}

#[test]
fn axioms_command() {
    let out = run(&["check-axioms", "n2", "--mode", "exhaustive"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("idempotent"));
}
