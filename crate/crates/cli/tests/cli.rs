use std::io::Write;
use std::process::{Command, Output, Stdio};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gammafree"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_of(args: &[&str], stdin: &str) -> String {
    let out = run(args, stdin);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn error_record(out: &Output) -> serde_json::Value {
    let err = String::from_utf8(out.stderr.clone()).unwrap();
    serde_json::from_str(err.lines().last().unwrap()).unwrap()
}

#[test]
fn counts() {
    assert_eq!(stdout_of(&["count", "poly-bernoulli", "--n", "3", "--k", "3"], ""), "230\n");
    assert_eq!(stdout_of(&["count", "poly-bernoulli", "--n", "4", "--k", "4"], ""), "6902\n");
    assert_eq!(stdout_of(&["count", "naf", "--n", "2", "--k", "2"], ""), "5\n");
    let rec = stdout_of(&["--format", "records", "count", "poly-bernoulli", "--n", "5", "--k", "5"], "");
    let v: serde_json::Value = serde_json::from_str(&rec).unwrap();
    assert_eq!(v["value"], "329462");
}

#[test]
fn verify_phi_summary() {
    let out = stdout_of(&["verify", "phi", "--n", "2", "--k", "2"], "");
    assert_eq!(out.lines().next().unwrap(), "14 matrices, 14 sequences, all round-trips OK");
    let out = stdout_of(&["verify", "phi", "--n", "0", "--k", "5"], "");
    assert!(out.starts_with("1 matrices, 1 sequences"));
}

#[test]
fn empty_callan_sequence_gives_zero_matrix() {
    assert_eq!(stdout_of(&["convert", "callan-to-matrix", "--n", "2", "--k", "3"], "[]"), "000\n000\n");
    assert_eq!(
        stdout_of(&["convert", "callan-to-matrix"], r#"{"n":2,"k":3,"pairs":[]}"#),
        "000\n000\n"
    );
}

#[test]
fn matrix_callan_round_trip() {
    let m = "100\n110\n011\n";
    let s = stdout_of(&["convert", "matrix-to-callan"], m);
    assert_eq!(stdout_of(&["convert", "callan-to-matrix"], &s), m);
    let column = stdout_of(&["convert", "callan-to-matrix", "--n", "2", "--k", "2"], r#"[{"S":[1,2],"T":[1]}]"#);
    assert_eq!(column, "01\n01\n");
}

#[test]
fn permutation_forest_round_trip() {
    let s = "3 9 13 12 10 7 4 11 6 1 5 2 8\n";
    let f = stdout_of(&["convert", "perm-to-forest"], s);
    assert_eq!(stdout_of(&["convert", "forest-to-perm"], &f), s);
}

#[test]
fn matrix_pair_round_trip_and_file_input() {
    let dir = std::env::temp_dir().join(format!("gammafree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.txt");
    std::fs::write(&path, "01\n11\n").unwrap();
    let pair = stdout_of(&["convert", "matrix-to-permpair", "--file", path.to_str().unwrap()], "");
    assert_eq!(stdout_of(&["convert", "permpair-to-matrix"], &pair), "01\n11\n");
    assert_eq!(stdout_of(&["convert", "permpair-to-matrix"], "1\n1\n"), "1\n");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn enumerate_counts() {
    assert_eq!(stdout_of(&["enumerate", "gamma-free", "--n", "3", "--k", "3", "--count-only"], ""), "230\n");
    assert_eq!(stdout_of(&["enumerate", "callan", "--n", "2", "--k", "2", "--count-only"], ""), "14\n");
    assert_eq!(stdout_of(&["enumerate", "no-common-rise", "--n", "3", "--count-only"], ""), "19\n");
    assert_eq!(
        stdout_of(&["enumerate", "point-forests", "--eta", "3,1,2", "--kind", "leftmost-valid", "--count-only"], ""),
        "4\n"
    );
    let listing = stdout_of(&["enumerate", "gamma-free", "--n", "1", "--k", "2"], "");
    assert_eq!(listing, "00\n\n01\n\n10\n\n11\n");
}

#[test]
fn series_output() {
    assert_eq!(stdout_of(&["series", "omega", "--max-n", "3"], ""), "0 1\n1 1\n2 3\n3 19\n");
    assert_eq!(stdout_of(&["series", "bessel", "--max-n", "2"], ""), "0 1\n1 1\n2 4\n");
    let markers = stdout_of(&["series", "gamma-free", "--max-n", "1", "--max-k", "1", "--markers"], "");
    assert!(markers.contains("1 1: 1 t + 1 a b\n") || markers.contains("1 1: 1 a b + 1 t\n"), "{markers}");
}

#[test]
fn usage_and_input_errors_exit_2() {
    let out = run(&["count"], "");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_record(&out)["error"], "usage");

    let out = run(&["convert", "matrix-to-callan"], "11\n10\n");
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_record(&out)["error"], "input");

    let out = run(&["convert", "permpair-to-matrix"], "1 2\n1 2\n");
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["convert", "callan-to-matrix"], "[]");
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["verify", "phi", "--n", "6", "--k", "6"], "");
    assert_eq!(out.status.code(), Some(2));
    assert!(error_record(&out)["message"].as_str().unwrap().contains("limit"));
}
