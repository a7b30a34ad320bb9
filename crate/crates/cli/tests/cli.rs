use std::path::PathBuf;
use std::process::{Command, Output};

fn ntarp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ntarp"))
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("binary runs")
}

fn workspace_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn no_arguments_prints_usage_and_fails() {
    let o = ntarp(&[]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("Usage"));
}

#[test]
fn budget_table_values() {
    let o = ntarp(&["budget-table"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("vc_dim,max_projections,max_projections_floor")
    );
    let floors: Vec<&str> = lines.map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(floors, ["3", "115", "10476", "1487935", "281672459"]);
}

#[test]
fn bounds_table_reference_row() {
    let o = ntarp(&["bounds-table", "--d", "6"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row: Vec<f64> = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(|c| c.parse().unwrap())
        .collect();
    assert_eq!(row[5], 19664.0);
    assert!((row[6] - 0.139).abs() < 5e-4);
    assert!((row[7] - 0.230).abs() < 5e-4);
}

#[test]
fn crossover_reports_both_exponents() {
    let o = ntarp(&["crossover", "--d", "2"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("2,1000,2,1847.26"));
    assert!(rows[1].starts_with("2,1000,3,"));
}

#[test]
fn gap_curve_is_monotone() {
    let o = ntarp(&["gap-curve", "--n", "50", "--vc", "2"]);
    let text = stdout(&o);
    assert_eq!(
        text.lines().next(),
        Some("n,samples,tarp_expected_gap,vc2_sauer,vc2_exp")
    );
    let tarp: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(2).unwrap().parse().unwrap())
        .collect();
    assert_eq!(tarp.len(), 50);
    assert!(tarp.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn synthetic_is_reproducible_and_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("syn.csv");
    let args = [
        "synthetic",
        "--n",
        "20",
        "--steps",
        "2",
        "--reps",
        "1",
        "--train-size",
        "20",
        "--test-size",
        "40",
        "--seed",
        "9",
    ];
    let mut with_out = args.to_vec();
    with_out.extend(["--out", out.to_str().unwrap()]);
    assert!(ntarp(&with_out).status.success());
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written, stdout(&ntarp(&args)));
    assert!(written.starts_with("step,stat,rep,seed,method,"));
    assert!(written
        .lines()
        .skip(1)
        .all(|l| l.split(',').nth(3) == Some("9")));
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "samples = 200\nd = [2, 3]\ndelta = 0.5\n").unwrap();
    let from_file = stdout(&ntarp(&["bounds-table", "--config", cfg.to_str().unwrap()]));
    assert_eq!(from_file.lines().count(), 3);
    assert!(from_file.lines().nth(1).unwrap().starts_with("2,0.5,200,"));
    let overridden = stdout(&ntarp(&[
        "bounds-table",
        "--config",
        cfg.to_str().unwrap(),
        "--delta",
        "0.1",
    ]));
    assert!(overridden.lines().nth(1).unwrap().starts_with("2,0.1,200,"));

    std::fs::write(&cfg, "unknown-key = 1\n").unwrap();
    let bad = ntarp(&["bounds-table", "--config", cfg.to_str().unwrap()]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    assert_eq!(
        ntarp(&["bounds-table", "--delta", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(ntarp(&["digits"]).status.code(), Some(2));
    assert_eq!(ntarp(&["digits", "--task", "nope"]).status.code(), Some(2));
    let missing = ntarp(&[
        "digits",
        "--task",
        "zero_one",
        "--data",
        "/nonexistent/optdigits.csv",
    ]);
    assert_eq!(missing.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent/optdigits.csv"));

    let dir = tempfile::tempdir().unwrap();
    let broken = dir.path().join("broken.csv");
    std::fs::write(&broken, "1,2,3\n").unwrap();
    let o = ntarp(&[
        "digits",
        "--task",
        "zero_one",
        "--data",
        broken.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn zero_train_grid() {
    let o = ntarp(&[
        "zero-train",
        "--dataset",
        "xor",
        "--k",
        "2",
        "--n",
        "500",
        "--seed",
        "1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().next(), Some("dataset,seed,k,n,train_error"));
    let last = text.lines().last().unwrap();
    assert_eq!(last, "xor,1,2,500,0");
    assert!(String::from_utf8_lossy(&o.stderr).contains("smallest order"));
}

#[test]
fn digits_quick_when_corpus_present() {
    if !workspace_root().join("data/optdigits.csv").exists() {
        return;
    }
    let o = ntarp(&["digits", "--task", "zero_one", "--quick", "--check-corpus"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    assert!(text.starts_with("task,stat,rep,seed,method,"));
    assert_eq!(text.lines().filter(|l| l.contains(",run,")).count(), 3);
}

#[test]
fn report_lists_named_bounds() {
    let text = stdout(&ntarp(&[
        "report",
        "--samples",
        "10000",
        "--n",
        "1000",
        "--d",
        "2",
    ]));
    let tarp: f64 = text
        .lines()
        .find(|l| l.starts_with("tarp_expected_gap,"))
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((tarp - 0.0603).abs() < 1e-4);
}
