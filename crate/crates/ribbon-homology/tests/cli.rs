//! End-to-end checks of the command-line binary: exit codes, output
//! contracts, and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ribbon-homology"))
        .args(args)
        .output()
        .expect("binary must run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("rh-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).expect("write temp file");
    path
}

#[test]
fn zero_edges_is_a_usage_error() {
    let out = run(&["enumerate", "--edges", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("--edges"), "stderr should explain: {err}");
}

#[test]
fn usage_errors_exit_with_code_two() {
    for args in [
        vec!["enumerate", "--edges", "1", "--complex", "nonsense"],
        vec!["enumerate", "--edges", "1", "--genus", "1"],
        vec!["boundary", "/definitely/not/a/file"],
        vec!["homology", "--genus", "1", "--marked", "1", "--max-edges", "0"],
        vec!["no-such-command"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "args {args:?}");
    }
}

#[test]
fn squared_differential_battery_passes_and_prints_per_case_lines() {
    let out = run(&["verify", "d2", "--max-edges", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("all ok"), "{text}");
    // One line per graph generator and per spanning product.
    assert!(text.lines().filter(|l| l.ends_with("d2 = 0 (0 first-boundary terms)") || l.contains(" ok ")).count() > 50);
}

#[test]
fn every_verification_battery_passes_at_reduced_scale() {
    for args in [
        vec!["verify", "chainmap", "--max-edges", "2"],
        vec!["verify", "hopf", "--max-edges", "1"],
        vec!["verify", "projections", "--max-edges", "2"],
        vec![
            "verify",
            "bialgebra",
            "--jacobi-len",
            "2",
            "--co-len",
            "3",
            "--cocycle-total",
            "4",
        ],
        vec!["verify", "divergence", "--field-len", "1", "--route-len", "3"],
        vec!["verify", "bracket-oracle", "--max-len", "3"],
    ] {
        let out = run(&args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "args {args:?}: {}",
            stdout(&out)
        );
        assert!(stdout(&out).contains("all ok"), "args {args:?}");
    }
}

#[test]
fn chain_file_failures_exit_one_with_a_counterexample() {
    let good = temp_file(
        "chains-good.txt",
        "1 * gamma^1 * nu^0 * (x1.xi1 | x2.xi2) + -1/3 * gamma^0 * nu^2 * (x1.x2.xi1.xi2)\n",
    );
    let out = run(&[
        "verify",
        "d2",
        "--max-edges",
        "1",
        "--chains",
        good.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    std::fs::remove_file(&good).ok();

    let bad = temp_file("chains-bad.txt", "garbage line\n");
    let out = run(&[
        "verify",
        "d2",
        "--max-edges",
        "1",
        "--chains",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("first counterexample"), "{text}");
    std::fs::remove_file(&bad).ok();
}

#[test]
fn boundary_applies_the_contraction_differential() {
    let graphs = temp_file(
        "graphs.txt",
        "# one two-edge graph, coefficient 1\n\
         E=2; sigma1=[(0,1),(2,3)]; vertices=[[cycle=[0,1,2]; g=0; n=0],[cycle=[3]; g=0; n=1]]; orient=[0,2]\n",
    );
    let out = run(&["boundary", graphs.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let terms: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(terms.len(), 2, "{text}");
    for t in &terms {
        assert!(t.contains(" * E=1; "), "term should be a one-edge record: {t}");
    }
    std::fs::remove_file(&graphs).ok();
}

#[test]
fn homology_table_has_the_documented_shape() {
    let out = run(&[
        "homology",
        "--complex",
        "rgc",
        "--genus",
        "1",
        "--marked",
        "1",
        "--max-edges",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("unaugmented"), "header must say so: {text}");
    assert!(text.contains("degree  dim"), "{text}");
    assert!(text.contains("euler: -1 from betti, -1 from dimensions"), "{text}");
}

#[test]
fn emitted_matrices_are_triplet_text() {
    let dir = std::env::temp_dir().join(format!("rh-cli-{}-mats", std::process::id()));
    let out = run(&[
        "homology",
        "--complex",
        "srgc",
        "--genus",
        "0",
        "--marked",
        "3",
        "--max-edges",
        "2",
        "--emit-matrices",
        dir.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let m2 = std::fs::read_to_string(dir.join("boundary_2.txt")).expect("matrix file");
    let header = m2.lines().next().expect("header line");
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|w| w.parse().unwrap())
        .collect();
    assert_eq!(dims.len(), 2);
    for entry in m2.lines().skip(1) {
        let cols: Vec<&str> = entry.split_whitespace().collect();
        assert_eq!(cols.len(), 3, "triplet line: {entry}");
        let r: usize = cols[0].parse().unwrap();
        let c: usize = cols[1].parse().unwrap();
        assert!(r < dims[0] && c < dims[1]);
    }
    let b1 = std::fs::read_to_string(dir.join("basis_1.txt")).expect("basis file");
    assert_eq!(b1.lines().count(), dims[0]);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_is_byte_deterministic() {
    for args in [
        vec!["enumerate", "--edges", "2", "--connected"],
        vec!["euler", "--complex", "rgc", "--max-edges", "3"],
        vec!["verify", "chainmap", "--max-edges", "2"],
        vec!["verify", "d2", "--max-edges", "2", "--json"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "args {args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn json_mode_emits_wellformed_objects() {
    let out = run(&[
        "homology",
        "--complex",
        "rgc",
        "--genus",
        "1",
        "--marked",
        "1",
        "--max-edges",
        "3",
        "--json",
    ]);
    let text = stdout(&out);
    assert!(text.starts_with("{\"command\":\"homology\""), "{text}");
    assert!(text.contains("\"euler_betti\":-1"), "{text}");
    assert!(text.trim_end().ends_with('}'), "{text}");

    let out = run(&["enumerate", "--edges", "1", "--json"]);
    let text = stdout(&out);
    assert!(text.starts_with("{\"command\":\"enumerate\""), "{text}");
    assert!(text.contains("\"count\":8"), "{text}");
}
