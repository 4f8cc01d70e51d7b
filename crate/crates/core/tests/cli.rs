// SPDX-License-Identifier: Apache-2.0

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn ordpat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordpat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

fn series_file(dir: &TempDir, name: &str, values: &[f64]) -> String {
    let mut body = String::from("value\n");
    for v in values {
        body.push_str(&format!("{v}\n"));
    }
    write(dir, name, &body)
}

#[test]
fn table_lists_all_patterns() {
    let out = ordpat(&["table", "--d", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert_eq!(lines[3], "2,3,1 | 1,1,0 | kse 4 | lehmer 3");

    let csv = stdout(&ordpat(&[
        "table", "--d", "3", "--scheme", "kse", "--format", "csv",
    ]));
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "rank,inversion,kse,lehmer");
    assert_eq!(rows.len(), 7);
    assert!(rows[2].ends_with(",1,2"), "{}", rows[2]);
}

#[test]
fn invert_reflects_tuples() {
    let out = ordpat(&[
        "invert",
        "--pattern",
        "3,2,5,1,4",
        "--rep",
        "perm",
        "--mode",
        "space",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "4,1,5,2,3\n");
    let out = ordpat(&[
        "invert",
        "--pattern",
        "4,2,1,5,3",
        "--rep",
        "rank",
        "--mode",
        "time",
    ]);
    assert_eq!(stdout(&out), "3,5,1,2,4\n");
    let out = ordpat(&[
        "invert",
        "--pattern",
        "3,1,0,1,0",
        "--rep",
        "inv",
        "--mode",
        "space",
    ]);
    assert_eq!(stdout(&out), "1,2,2,0,0\n");
}

#[test]
fn increasing_series_has_one_pattern() {
    let dir = TempDir::new().unwrap();
    let values: Vec<f64> = (0..100).map(f64::from).collect();
    let input = series_file(&dir, "up.csv", &values);
    let out = ordpat(&["freq", "--input", &input, "--d", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("code,pattern,count,frequency"));
    assert_eq!(lines.next(), Some("0,\"1,2,3\",98,1.000000"));
    assert_eq!(lines.next(), Some("total,,98,"));
}

#[test]
fn extracted_codes_round_trip_through_freq() {
    let dir = TempDir::new().unwrap();
    let values: Vec<f64> = (0..300)
        .map(|k| ((k as f64) * 0.37).sin().round() + k as f64 % 3.0)
        .collect();
    let input = series_file(&dir, "x.csv", &values);
    for ties in ["stable", "skip", "generalized"] {
        for scheme in ["lehmer", "kse"] {
            let base = [
                "--input", &input, "--d", "4", "--ties", ties, "--scheme", scheme,
            ];
            let direct = ordpat(&[&["freq"][..], &base, &["--format", "json"]].concat());
            assert!(direct.status.success());
            let codes = ordpat(&[&["extract"][..], &base, &["--format", "json"]].concat());
            assert!(codes.status.success());
            let codes_path = write(&dir, "codes.json", &stdout(&codes));
            let via = ordpat(&["freq", "--from-codes", &codes_path, "--format", "json"]);
            assert!(
                via.status.success(),
                "{}",
                String::from_utf8_lossy(&via.stderr)
            );
            assert_eq!(stdout(&via), stdout(&direct));
        }
    }
}

#[test]
fn plain_code_files_need_a_length() {
    let dir = TempDir::new().unwrap();
    let codes = write(&dir, "codes.txt", "0\n5\n\n5\n");
    let out = ordpat(&["freq", "--from-codes", &codes, "--d", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("5,\"3,2,1\",2,0.666667"), "{text}");
    assert!(text.contains("skipped,,1,"), "{text}");
}

#[test]
fn perturbation_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let values: Vec<f64> = (0..500).map(|k| (k % 3) as f64).collect();
    let input = series_file(&dir, "ties.csv", &values);
    let run = |seed: &str| {
        let out = ordpat(&[
            "extract", "--input", &input, "--d", "4", "--ties", "perturb", "--seed", seed,
        ]);
        assert!(out.status.success());
        stdout(&out)
    };
    assert_eq!(run("11"), run("11"));
    assert_ne!(run("11"), run("12"));
}

#[test]
fn opd_of_a_series_with_itself_is_one() {
    let dir = TempDir::new().unwrap();
    let values: Vec<f64> = (0..400)
        .map(|k| ((k * k) % 97) as f64 + 0.5 * k as f64)
        .collect();
    let x = series_file(&dir, "x.csv", &values);
    let out = ordpat(&["opd", "--input-x", &x, "--input-y", &x, "--d", "3"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["signed"].as_f64(), Some(1.0));
    assert_eq!(json["degenerate"].as_bool(), Some(false));
}

#[test]
fn named_columns_are_selected() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "two.csv", "Date,Open\na,3\nb,1\nc,2\nd,5\n");
    let out = ordpat(&["extract", "--input", &input, "--column", "Open", "--d", "2"]);
    assert_eq!(stdout(&out), "1\n0\n0\n");
}

#[test]
fn exit_codes() {
    assert_eq!(ordpat(&["--help"]).status.code(), Some(0));
    assert_eq!(ordpat(&["table"]).status.code(), Some(2));
    assert_eq!(ordpat(&["table", "--d", "1"]).status.code(), Some(2));
    assert_eq!(
        ordpat(&[
            "invert",
            "--pattern",
            "1,1",
            "--rep",
            "rank",
            "--mode",
            "time"
        ])
        .status
        .code(),
        Some(2)
    );

    let dir = TempDir::new().unwrap();
    let input = series_file(&dir, "x.csv", &[1.0, 2.0, 3.0]);
    let missing_seed = ordpat(&[
        "extract", "--input", &input, "--d", "2", "--ties", "perturb",
    ]);
    assert_eq!(missing_seed.status.code(), Some(2));
    let stray_seed = ordpat(&["extract", "--input", &input, "--d", "2", "--seed", "4"]);
    assert_eq!(stray_seed.status.code(), Some(2));

    let absent = dir.path().join("absent.csv");
    let out = ordpat(&["extract", "--input", absent.to_str().unwrap(), "--d", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let too_short = ordpat(&["extract", "--input", &input, "--d", "5"]);
    assert_eq!(too_short.status.code(), Some(3));
}

#[test]
fn bad_cells_report_their_line() {
    let dir = TempDir::new().unwrap();
    let input = write(&dir, "bad.csv", "v\n1\n2\n3\n4\n5\nabc\n7\n");
    let out = ordpat(&["extract", "--input", &input, "--d", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 7"), "{err}");
    assert!(Path::new(&input).exists());
}
