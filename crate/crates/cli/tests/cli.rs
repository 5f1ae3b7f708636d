use std::path::Path;
use std::process::{Command, Output};

fn chordiv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chordiv")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn eval_examples() {
    let o = chordiv(&[
        "eval", "--generator", "quadratic", "--div", "bregman_chord", "--alpha", "0.25", "--beta", "0.75",
        "--x", "0", "--y", "1",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0.1875\n");

    let o = chordiv(&["eval", "--generator", "shannon_negentropy", "--div", "bregman", "--x", "0.5", "--y", "0.5"]);
    assert_eq!(stdout(&o), "0\n");

    let o = chordiv(&["eval", "--div", "fdiv:kl", "--x", "0.5,0.5", "--y", "0.25,0.75"]);
    assert_eq!(stdout(&o), "0.143841036226\n");

    let o = chordiv(&["eval", "--generator", "quadratic", "--div", "bregman", "--x", "-1,2", "--y", "0,0"]);
    assert_eq!(stdout(&o), "5\n");
}

#[test]
fn eval_errors_map_to_exit_codes() {
    let o = chordiv(&[
        "eval", "--generator", "quadratic", "--div", "bregman_chord", "--alpha", "0.5", "--beta", "0.5",
        "--x", "0", "--y", "1",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("invalid chord parameters"));
    assert_eq!(stderr(&o).lines().count(), 1);

    let o = chordiv(&["eval", "--generator", "burg_negentropy", "--div", "bregman", "--x", "-1", "--y", "1"]);
    assert_eq!(o.status.code(), Some(3));

    for args in [
        &["eval", "--generator", "nope", "--div", "bregman", "--x", "1", "--y", "1"][..],
        &["eval", "--div", "nope", "--x", "1", "--y", "1"],
        &["eval", "--div", "bregman_chord", "--x", "0", "--y", "1", "--alpha", "0.3"],
        &["eval", "--div", "bregman", "--x", "0,1", "--y", "1"],
        &["eval", "--div", "bregman", "--x", "a", "--y", "1"],
        &["eval", "--div", "bregman", "--x", "1"],
        &["eval", "--div", "bregman_chord", "--x", "0", "--y", "1", "--alpha", "nan", "--beta", "1"],
    ] {
        assert_eq!(chordiv(args).status.code(), Some(2), "{args:?}");
    }
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn sweep_writes_csv_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let svg = dir.path().join("s.svg");
    let o = chordiv(&[
        "sweep", "--generator", "quadratic", "--div", "bregman_chord", "--x", "0", "--y", "1", "--grid", "2",
        "--no-beta-one", "--out", csv.to_str().unwrap(), "--svg", svg.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        read(&csv),
        "alpha,beta,value\n\
         0.333333333333,0.666666666667,0.222222222222\n\
         0.666666666667,0.333333333333,0.222222222222\n\
         # bregman=1\n"
    );
    let svg = read(&svg);
    assert!(svg.starts_with("<svg") && svg.contains("min=0.222222222222"));

    let o = chordiv(&[
        "sweep", "--generator", "quadratic", "--div", "bregman_chord", "--x", "0", "--y", "1", "--grid", "2",
        "--out", csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = read(&csv);
    assert_eq!(text.lines().count(), 1 + 4 + 1);
    assert!(text.contains("0.333333333333,1,0.333333333333\n"));
}

#[test]
fn sweep_on_coincident_points_is_zero() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let o = chordiv(&[
        "sweep", "--generator", "shannon_negentropy", "--div", "bregman_chord", "--x", "0.3,0.4", "--y",
        "0.3,0.4", "--grid", "4", "--out", csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    for line in read(&csv).lines().skip(1).filter(|l| !l.starts_with('#')) {
        assert!(line.ends_with(",0"), "{line}");
    }
}

#[test]
fn sweep_unwritable_path_is_io_error() {
    let o = chordiv(&[
        "sweep", "--div", "bregman_chord", "--x", "0", "--y", "1", "--grid", "2", "--out",
        "/nonexistent-dir/s.csv",
    ]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn cluster_writes_assignments_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("points.csv");
    std::fs::write(&input, "0.1\n0.11\n0.12\n0.9\n0.91\n").unwrap();
    let o = chordiv(&[
        "cluster", "--input", input.to_str().unwrap(), "--k", "2", "--generator", "quadratic", "--div",
        "bregman", "--seed", "3", "--out-dir", dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let assignments = read(&dir.path().join("assignments.csv"));
    let labels: Vec<&str> = assignments.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(labels.len(), 5);
    assert!(labels[0] == labels[1] && labels[1] == labels[2] && labels[3] == labels[4] && labels[0] != labels[3]);

    let summary: serde_json::Value = serde_json::from_str(&read(&dir.path().join("summary.json"))).unwrap();
    assert_eq!(summary["seed"], 3);
    assert!(summary["iterations"].as_u64().unwrap() >= 1);
    let mut centers: Vec<f64> = summary["centers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c[0].as_f64().unwrap())
        .collect();
    centers.sort_by(f64::total_cmp);
    assert!((centers[0] - 0.11).abs() < 1e-6 && (centers[1] - 0.905).abs() < 1e-6);
    assert!(summary["objective"].as_f64().unwrap() >= 0.0);

    let first = read(&dir.path().join("summary.json"));
    let o = chordiv(&[
        "cluster", "--input", input.to_str().unwrap(), "--k", "2", "--seed", "3", "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(first, read(&dir.path().join("summary.json")));
}

#[test]
fn cluster_errors() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("points.csv");
    std::fs::write(&input, "0.1\n0.1\n").unwrap();
    let o = chordiv(&["cluster", "--input", input.to_str().unwrap(), "--k", "2", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("infeasible"));

    std::fs::write(&input, "0.1\n0.2\nzz\n").unwrap();
    let o = chordiv(&["cluster", "--input", input.to_str().unwrap(), "--k", "1", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains(":3:"), "{}", stderr(&o));

    let missing = dir.path().join("missing.csv");
    let o = chordiv(&["cluster", "--input", missing.to_str().unwrap(), "--k", "1"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn verify_suites() {
    let o = chordiv(&["verify", "--suite", "sandwich", "--trials", "30"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("sandwich") && stdout(&o).contains("PASS"));

    let o = chordiv(&["verify", "--suite", "dual_identity"]);
    assert!(o.status.success());

    let o = chordiv(&["verify", "--suite", "no_such"]);
    assert_eq!(o.status.code(), Some(2));
}
