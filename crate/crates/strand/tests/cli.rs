//! End-to-end tests of the strand binary: file formats, exit codes, JSON
//! output, and seed-for-seed reproducibility.

use std::path::Path;
use std::process::{Command, Output};

fn strand(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strand"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary must spawn")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process must exit normally")
}

#[test]
fn gen_is_reproducible_and_shaped() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "gen", "scs", "--n", "3", "--min-len", "3", "--max-len", "3", "--alphabet", "4",
        "--seed", "7", "--out", "a.txt",
    ];
    assert_eq!(exit_code(&strand(dir.path(), &args)), 0);
    let first = std::fs::read(dir.path().join("a.txt")).unwrap();
    let again = [
        "gen", "scs", "--n", "3", "--min-len", "3", "--max-len", "3", "--alphabet", "4",
        "--seed", "7", "--out", "b.txt",
    ];
    assert_eq!(exit_code(&strand(dir.path(), &again)), 0);
    let second = std::fs::read(dir.path().join("b.txt")).unwrap();
    assert_eq!(first, second);

    let text = String::from_utf8(first).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    for line in lines {
        assert_eq!(line.len(), 3);
        assert!(line.bytes().all(|b| (b'a'..=b'd').contains(&b)));
    }
}

#[test]
fn solve_scs_reports_the_optimal_length() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("inst.txt"), "CAT\nATG\nTGA\n").unwrap();
    let out = strand(
        dir.path(),
        &["solve-scs", "inst.txt", "--json-out", "sol.json"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("length: 5"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("sol.json")).unwrap())
            .unwrap();
    assert_eq!(json["length"], 5);
    assert_eq!(json["superstring"], "CATGA");
    assert!(json["ledger"]["total_quantum_cost"].as_f64().unwrap() > 0.0);
}

#[test]
fn assemble_exits_zero_on_feasible_input() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("t.text"), "ababab\n").unwrap();
    std::fs::write(dir.path().join("d.dict"), "ab\nabab\n").unwrap();
    let out = strand(
        dir.path(),
        &["assemble", "t.text", "d.dict", "--json-out", "asm.json"],
    );
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("asm.json")).unwrap())
            .unwrap();
    assert_eq!(json["feasible"], true);
    assert_eq!(json["Q"][0], 1);
}

#[test]
fn assemble_exits_two_on_infeasible_input() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("t.text"), "abc\n").unwrap();
    std::fs::write(dir.path().join("d.dict"), "ab\n").unwrap();
    let out = strand(
        dir.path(),
        &["assemble", "t.text", "d.dict", "--json-out", "asm.json"],
    );
    assert_eq!(exit_code(&out), 2);
    assert!(stderr(&out).contains("infeasible"));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("asm.json")).unwrap())
            .unwrap();
    assert_eq!(json["feasible"], false);
}

#[test]
fn malformed_input_exits_one_with_a_diagnostic() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("bad.txt"), "CA T\n").unwrap();
    let out = strand(dir.path(), &["solve-scs", "bad.txt"]);
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("parse"));

    let missing = strand(dir.path(), &["solve-scs", "no-such-file.txt"]);
    assert_eq!(exit_code(&missing), 1);
    assert!(!stderr(&missing).is_empty());
}

#[test]
fn unknown_flags_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = strand(dir.path(), &["solve-scs", "x.txt", "--frobnicate"]);
    assert_eq!(exit_code(&out), 1);
    assert!(!stderr(&out).is_empty());

    let help = strand(dir.path(), &["--help"]);
    assert_eq!(exit_code(&help), 0);
    assert!(stdout(&help).contains("verify"));
}

#[test]
fn verify_runs_a_named_suite() {
    let dir = tempfile::tempdir().unwrap();
    let out = strand(dir.path(), &["verify", "segtree", "--seed", "3"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("OK segtree/model-agreement"));

    let unknown = strand(dir.path(), &["verify", "bogus"]);
    assert_eq!(exit_code(&unknown), 1);
    assert!(stderr(&unknown).contains("unknown suite"));
}

#[test]
fn bench_refuses_a_single_size_point() {
    let dir = tempfile::tempdir().unwrap();
    let out = strand(
        dir.path(),
        &["bench", "--stage", "graph", "--ns", "16", "--lens", "8,16,32,64"],
    );
    assert_eq!(exit_code(&out), 1);
    assert!(stderr(&out).contains("fit refused"));
}

#[test]
fn bench_reports_are_identical_for_one_seed() {
    let dir = tempfile::tempdir().unwrap();
    fn args<'a>(json: &'a str, csv: &'a str) -> Vec<&'a str> {
        vec![
            "bench", "--stage", "tao", "--ms", "8,16,32,64", "--tao-ns", "2,3,4,5",
            "--seed", "5", "--json-out", json, "--csv-out", csv,
        ]
    }
    let first = strand(dir.path(), &args("r1.json", "r1.csv"));
    assert_eq!(exit_code(&first), 0, "stderr: {}", stderr(&first));
    let second = strand(dir.path(), &args("r2.json", "r2.csv"));
    assert_eq!(exit_code(&second), 0);
    let j1 = std::fs::read(dir.path().join("r1.json")).unwrap();
    let j2 = std::fs::read(dir.path().join("r2.json")).unwrap();
    assert_eq!(j1, j2);
    let c1 = std::fs::read(dir.path().join("r1.csv")).unwrap();
    let c2 = std::fs::read(dir.path().join("r2.csv")).unwrap();
    assert_eq!(c1, c2);
    let csv = String::from_utf8(c1).unwrap();
    assert!(csv.starts_with("problem,n,L,m,stage,charged_cost,wall_time"));
    assert_eq!(csv.lines().count(), 17);
}
