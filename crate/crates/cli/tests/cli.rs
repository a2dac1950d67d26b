use std::process::Command;

use frobsq_cli::{run, EXIT_CAPACITY, EXIT_OK, EXIT_USAGE};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn frobsq(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("frobsq").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn field<'a>(stdout: &'a str, key: &str) -> Option<&'a str> {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(key)?.strip_prefix(": "))
}

#[test]
fn iota_seven() {
    let r = frobsq(&["iota", "7"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(field(&r.stdout, "iota"), Some("4"));
    assert_eq!(field(&r.stdout, "class"), Some("FourSquares"));
    let witness = field(&r.stdout, "witness").unwrap();
    let sum: u64 = witness
        .split('+')
        .map(|t| t.trim_end_matches("^2").parse::<u64>().unwrap().pow(2))
        .sum();
    assert_eq!(witness.split('+').count(), 4);
    assert_eq!(sum, 7);
}

#[test]
fn iota_json() {
    let r = frobsq(&["iota", "33", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["iota"], 3);
    assert_eq!(v["class"], "ThreeSquares");
    assert_eq!(v["witness"].as_array().unwrap().len(), 3);
}

#[test]
fn classify_reports_reasons() {
    let r = frobsq(&["classify", "112"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(field(&r.stdout, "class"), Some("FourSquares"));
    assert_eq!(field(&r.stdout, "factorization"), Some("2^4*7"));
    assert_eq!(field(&r.stdout, "legendre_form"), Some("4^2*(8*0+7)"));

    let r = frobsq(&["classify", "25", "--format", "csv"]);
    let rows: Vec<&str> = r.stdout.lines().collect();
    assert!(rows[1].starts_with("25,PerfectSquare,1,1,5^2,true,true,"));
}

#[test]
fn frobenius_all_methods_agree_at_eight() {
    let r = frobsq(&["frobenius", "--a", "8", "--method", "all"]);
    assert_eq!(r.code, EXIT_OK);
    for key in ["closed", "maxr", "oracle"] {
        assert_eq!(field(&r.stdout, key), Some("31"), "{key}");
    }
    assert_eq!(field(&r.stdout, "agree"), Some("true"));
}

#[test]
fn frobenius_json_single_method() {
    let r = frobsq(&[
        "frobenius",
        "--a",
        "116",
        "--method",
        "closed",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["results"][0]["value"], 460);
    assert_eq!(v["results"][0]["branch"], "B4_minus4");
    assert_eq!(v["results"][0]["method"], "closed");
    assert!(v.get("agree").is_none());
}

#[test]
fn frobenius_closed_form_outside_domain() {
    let r = frobsq(&["frobenius", "--a", "33", "--method", "closed"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("multiples of 4"));
}

#[test]
fn frobenius_hypothesis_failure_is_domain_class() {
    let r = frobsq(&["frobenius", "--a", "4", "--method", "maxr"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("hypothesis fails"));
    // `all` skips it with a note and still reports the oracle.
    let r = frobsq(&["frobenius", "--a", "4"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(field(&r.stdout, "oracle"), Some("11"));
    assert!(r.stderr.contains("maxr skipped"));
}

#[test]
fn apery_and_gaps() {
    let r = frobsq(&["apery", "--generators", "3,5"]);
    assert_eq!(field(&r.stdout, "elements"), Some("0,10,5"));
    assert_eq!(field(&r.stdout, "frobenius"), Some("7"));

    let r = frobsq(&["apery", "--a", "8", "--format", "csv"]);
    assert_eq!(r.stdout.lines().count(), 9);
    assert!(r.stdout.lines().any(|l| l == "7,39"));

    let r = frobsq(&["apery", "--generators", "3,5", "--modulus", "7"]);
    assert_eq!(r.code, EXIT_USAGE);

    let r = frobsq(&["gaps", "--generators", "3,5"]);
    assert_eq!(field(&r.stdout, "gaps"), Some("1,2,4,7"));
    assert_eq!(field(&r.stdout, "genus"), Some("4"));

    let r = frobsq(&["gaps", "--a", "8", "--format", "csv"]);
    assert_eq!(r.stdout.lines().last(), Some("31"));

    let r = frobsq(&["gaps", "--generators", "4,6"]);
    assert_eq!(r.code, EXIT_USAGE);
    let r = frobsq(&["gaps"]);
    assert_eq!(r.code, EXIT_USAGE);
    let r = frobsq(&["gaps", "--a", "8", "--generators", "3,5"]);
    assert_eq!(r.code, EXIT_USAGE);
}

#[test]
fn scan_acceptance_run_is_clean() {
    let r = frobsq(&[
        "scan", "--from", "32", "--to", "200", "--mod8", "0,4", "--oracle", "--format", "csv",
    ]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "a,mod8,closed_form,branch,max_r_value,witness_r,oracle_value,agree_formula_theorem,agree_theorem_oracle,hypothesis_holds");
    assert_eq!(lines.len(), 1 + 43);
    assert!(lines[1..].iter().all(|l| l.ends_with("true,true,true")));
    assert!(r.stderr.contains("0 mismatch"));
}

#[test]
fn scan_json_and_plain() {
    let r = frobsq(&["scan", "--from", "8", "--to", "12", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 5);
    assert_eq!(v["records"][0]["mod8"], 0);
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);

    let r = frobsq(&["scan", "--from", "8", "--to", "12", "--format", "plain"]);
    assert_eq!(r.stdout.lines().count(), 6);
}

#[test]
fn scan_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let r = frobsq(&[
        "scan",
        "--from",
        "32",
        "--to",
        "40",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn scan_usage_errors() {
    for args in [
        &["scan", "--from", "1", "--to", "5"][..],
        &["scan", "--from", "9", "--to", "5"],
        &["scan", "--from", "2", "--to", "5", "--jobs", "0"],
        &["scan", "--from", "2", "--to", "5", "--mod8", "9"],
        &["scan", "--from", "2", "--to", "x"],
        &["scan", "--from", "2", "--to", "5", "--bogus"],
    ] {
        let r = frobsq(args);
        assert_eq!(r.code, EXIT_USAGE, "{args:?}");
        assert!(r.stdout.is_empty(), "{args:?}");
        assert!(!r.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn capacity_errors_exit_two() {
    let r = frobsq(&["frobenius", "--a", "2000000", "--method", "oracle"]);
    assert_eq!(r.code, EXIT_CAPACITY);
    let r = frobsq(&["scan", "--from", "2", "--to", "2000000", "--oracle"]);
    assert_eq!(r.code, EXIT_CAPACITY);
    assert!(r.stdout.is_empty());
}

#[test]
fn profile_output() {
    let r = frobsq(&["profile", "--from", "32", "--to", "2000", "--format", "csv"]);
    assert_eq!(r.code, EXIT_OK);
    let zero: Vec<&str> = r.stdout.lines().filter(|l| l.starts_with("0,")).collect();
    assert_eq!(zero, vec!["0,1,247"]);
}

#[test]
fn help_goes_to_stdout() {
    let r = frobsq(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("scan"));
    assert!(r.stderr.is_empty());
}

#[test]
fn binary_honours_cap_override_and_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_frobsq");
    let out = Command::new(bin)
        .args(["scan", "--from", "32", "--to", "64", "--oracle"])
        .env("FROBSQ_ORACLE_CAP", "50")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_CAPACITY));
    assert!(out.stdout.is_empty());

    let out = Command::new(bin)
        .args(["iota", "50"])
        .env("FROBSQ_IOTA_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(field(&stdout, "witness"), Some(""));
    assert_eq!(field(&stdout, "iota"), Some("2"));

    let out = Command::new(bin)
        .args(["iota", "5"])
        .env("FROBSQ_IOTA_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
}
