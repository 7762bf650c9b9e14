use std::process::{Command, Output};

use circhyp::cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use circhyp::report::Report;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_circhyp")).args(args).output().expect("binary runs")
}

fn in_process(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("circhyp").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn exit_codes() {
    let cases: &[(&[&str], i32)] = &[
        (&["verify", "exp", "--n", "4", "--m", "3"], EXIT_PASS),
        (&["verify", "cosh", "--n", "2", "--m", "0"], EXIT_FAIL),
        (&["verify", "--n", "2", "--m", "1", "--components", "cosh,sinh"], EXIT_PASS),
        (&["verify", "--n", "2", "--m", "1", "--components", "0.5*exp,0.5*exp"], EXIT_FAIL),
        (&["verify", "--n", "4", "--m", "1", "--construct-m", "2", "--generators", "exp,exp(2*x)"], EXIT_FAIL),
        (&["verify", "--n", "4", "--m", "2", "--generators", "exp,exp(2*x)"], EXIT_PASS),
        (&["verify", "--n", "4", "--m", "2", "--generators", "exp"], EXIT_USAGE),
        (&["verify", "--n", "4", "--m", "9", "exp"], EXIT_USAGE),
        (&["verify", "exp", "--components", "exp,exp", "--n", "2", "--m", "0"], EXIT_USAGE),
        (&["construct", "--n", "6", "--m", "4", "--generators", "exp,exp(-x)"], EXIT_PASS),
        (&["construct", "--n", "6", "--m", "4", "--generators", "exp,cosh"], EXIT_FAIL),
        (&["stability", "--n", "4", "--m", "2"], EXIT_PASS),
        (&["stability", "--n", "7", "--m", "3"], EXIT_PASS),
        (&["stability", "--n", "4"], EXIT_USAGE),
        (&["decompose", "exp", "--n", "3"], EXIT_PASS),
        (&["decompose", "exp / 2", "--n", "3"], EXIT_USAGE),
        (&["decompose", "exp", "--n", "3", "--x", "1+"], EXIT_USAGE),
        (&["eval", "genhyp", "4", "1", "1"], EXIT_PASS),
        (&["eval", "genhyp", "1", "0", "1"], EXIT_USAGE),
        (&["eval", "genhyp", "4", "1", "1", "--tol", "-1"], EXIT_USAGE),
        (&["table", "--orders", "2,3"], EXIT_PASS),
        (&["table"], EXIT_USAGE),
        (&["table", "--n", "3", "--format", "xml"], EXIT_USAGE),
        (&["--n", "3"], EXIT_USAGE),
    ];
    for (args, want) in cases {
        let out = bin(args);
        assert_eq!(out.status.code(), Some(*want), "{}: {}", args.join(" "), String::from_utf8_lossy(&out.stderr));
        if *want == EXIT_USAGE {
            assert!(out.stdout.is_empty(), "{}", args.join(" "));
            assert!(!out.stderr.is_empty(), "{}", args.join(" "));
        }
    }
}

#[test]
fn table_matches_golden_file() {
    let out = bin(&["table", "--n", "4", "--format", "csv", "--deterministic"]);
    assert_eq!(out.status.code(), Some(EXIT_PASS));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), include_str!("golden/table_n4.csv"));
}

#[test]
fn deterministic_reports_are_byte_identical() {
    let commands: &[&[&str]] = &[
        &["verify", "exp", "--n", "5", "--m", "2"],
        &["verify", "--n", "6", "--m", "2", "--construct-m", "4", "--generators", "exp,exp(2*x)"],
        &["stability", "--n", "6", "--m", "4"],
        &["stability", "--n", "5", "--m", "1"],
        &["decompose", "sin(x)*exp", "--n", "4"],
        &["eval", "genhyp", "3", "2", "0.5-1i", "--x", "1,2i"],
        &["construct", "--n", "4", "--m", "2", "--generators", "exp,0"],
    ];
    for args in commands {
        for format in ["json", "csv"] {
            let mut a = args.to_vec();
            a.extend(["--format", format, "--deterministic", "--seed", "1234"]);
            let first = bin(&a);
            let second = bin(&a);
            assert!(!first.stdout.is_empty());
            assert_eq!(first.stdout, second.stdout, "{}", a.join(" "));
            // Same bytes in-process, whichever sweep path the build uses.
            assert_eq!(in_process(&a).1.as_bytes(), first.stdout.as_slice());
        }
    }
}

#[test]
fn timestamp_only_without_deterministic() {
    let (_, with) = in_process(&["stability", "--n", "4", "--m", "2"]);
    let (_, without) = in_process(&["stability", "--n", "4", "--m", "2", "--deterministic"]);
    let with: serde_json::Value = serde_json::from_str(&with).unwrap();
    let mut without: serde_json::Value = serde_json::from_str(&without).unwrap();
    assert!(with["timestamp"].is_u64());
    assert!(without.get("timestamp").is_none());
    without["timestamp"] = with["timestamp"].clone();
    assert_eq!(with, without);
}

#[test]
fn seed_changes_samples() {
    let (_, a) = in_process(&["verify", "exp", "--n", "3", "--m", "1", "--deterministic", "--seed", "1"]);
    let (_, b) = in_process(&["verify", "exp", "--n", "3", "--m", "1", "--deterministic", "--seed", "2"]);
    assert_ne!(a, b);
}

#[test]
fn json_schema_fields() {
    let (code, text) = in_process(&["verify", "exp", "--n", "4", "--m", "3", "--samples", "7", "--deterministic"]);
    assert_eq!(code, EXIT_PASS);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "verify");
    assert_eq!(v["config"]["n"], 4);
    assert_eq!(v["config"]["m"], 3);
    assert_eq!(v["config"]["seed"], 42);
    assert_eq!(v["config"]["samples"], 7);
    assert_eq!(v["results"].as_array().unwrap().len(), 7);
    assert!(v["max_residual"].as_f64().unwrap() <= 1e-10);
    assert_eq!(v["pass"], true);
}

#[test]
fn csv_reports_round_trip_for_every_command() {
    let commands: &[&[&str]] = &[
        &["verify", "exp", "--n", "4", "--m", "3"],
        &["verify", "--n", "2", "--m", "1", "--components", "0.5*exp,0.5*exp"],
        &["construct", "--n", "6", "--m", "3", "--generators", "exp,exp(1.5i*x),0"],
        &["stability", "--n", "6", "--m", "3"],
        &["stability", "--n", "5", "--m", "3"],
        &["decompose", "x^2 + x", "--n", "3"],
        &["eval", "genhyp", "2", "0", "-1"],
        &["table", "--orders", "2,5", "--a", "-1", "--step", "0.25"],
    ];
    for args in commands {
        let mut a = args.to_vec();
        a.extend(["--format", "csv"]);
        let (_, text) = in_process(&a);
        let report = Report::from_csv(&text).unwrap_or_else(|e| panic!("{}: {e}", a.join(" ")));
        assert_eq!(report.to_csv(), text, "{}", a.join(" "));
        assert_eq!(Report::from_csv(&report.to_csv()).unwrap(), report);
    }
}

#[test]
fn stability_csv_lists_corpus() {
    let (_, text) = in_process(&["stability", "--n", "5", "--m", "2", "--format", "csv", "--deterministic"]);
    let r = Report::from_csv(&text).unwrap();
    assert_eq!(r.summary_value("classification").unwrap(), &circhyp::report::Cell::text("exact-solution"));
    let labels = r.column("label").unwrap();
    assert!(labels.iter().any(|l| matches!(l, circhyp::report::Cell::Text(s) if s.starts_with("perturbed "))));
    assert!(r.pass);
}
