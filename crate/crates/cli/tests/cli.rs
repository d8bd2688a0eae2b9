use std::process::{Command, Output};

use serde_json::Value;

const SQRT2M1: &str = "(-1+1*sqrt(2))/1";

fn oocf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_oocf"))
        .args(args)
        .env_remove("OODD_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = oocf(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("valid JSON");
    assert_eq!(v["schema"], 1);
    // What comes out parses back to the same document.
    assert_eq!(serde_json::from_str::<Value>(&v.to_string()).unwrap(), v);
    v
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn expand_examples() {
    let v = json(&["expand", "--input", "1/3", "--all"]);
    let digits: Vec<&Value> = v["expansions"].as_array().unwrap().iter().map(|e| &e["digits"]).collect();
    assert_eq!(digits.len(), 2);
    assert!(digits.contains(&&serde_json::json!([[2, -1]])));
    assert!(digits.contains(&&serde_json::json!([[1, 1]])));

    let v = json(&["expand", "--input", SQRT2M1]);
    assert_eq!(v["terminator"], "periodic");
    assert_eq!(v["digits"], serde_json::json!([[1, 1]]));
    assert_eq!(v["period_start"], 0);

    let v = json(&["expand", "--input", "0/1"]);
    assert_eq!(v["terminator"], "tail_2m1");
    assert_eq!(v["digits"], serde_json::json!([]));
}

#[test]
fn convergents_as_tsv() {
    let out = oocf(&["convergents", "--input", SQRT2M1, "-n", "4", "--format", "tsv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n\tdigit\tprincipal\tsub\tpseudo");
    let principal: Vec<&str> = lines[1..].iter().map(|l| l.split('\t').nth(2).unwrap()).collect();
    assert_eq!(principal, ["1/3", "3/7", "7/17", "17/41"]);
    assert_eq!(lines[1], "1\t(1,1)\t1/3\t0/1\t1/2");
}

#[test]
fn best_and_thm1() {
    let v = json(&["best", "--input", SQRT2M1, "--qmax", "20"]);
    assert_eq!(v["best"], serde_json::json!(["1/1", "1/3", "3/7", "7/17"]));
    let v = json(&["verify", "thm1", "--input", SQRT2M1, "--qmax", "10000"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["oocf_list"], v["brute_list"]);
    assert_eq!(v["suite"], "thm1");
    let out = oocf(&["best", "--input", "1/3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verification_suites() {
    for args in [
        vec!["verify", "thm2", "--input", "(-3+sqrt(13))/2"],
        vec!["verify", "thm2", "--input", "8/11"],
        vec!["verify", "intermediate", "--input", SQRT2M1, "-n", "10"],
        vec!["verify", "conjugacy", "--input", "2/7"],
        vec!["verify", "keita", "--input", "8/11", "-n", "2"],
        vec!["verify", "eicf-best", "--input", "(-1+sqrt(5))/2"],
    ] {
        let v = json(&args);
        assert_eq!(v["pass"], true, "{args:?}");
    }
    // An expansion cut off before it repeats is a failed check, not an input error.
    let out = oocf(&["verify", "thm2", "--input", "(-3+sqrt(13))/2", "--cap", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn convert_rcf() {
    let v = json(&["convert", "--from", "rcf", "--to", "oocf", "--digits", "1,2,1,2"]);
    assert_eq!(v["digits"], serde_json::json!([[3, 1], [3, -1]]));
    assert_eq!(v["terminator"], "tail_2m1");
    assert_eq!(v["value"], "8/11");
    let v = json(&["convert", "--digits", "2 2 2 2 2", "--truncated"]);
    assert_eq!(v["terminator"], "truncated");
    let out = oocf(&["convert", "--from", "oocf", "--to", "rcf", "--digits", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = oocf(&["convert", "--digits", "1,0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn measure_exit_codes() {
    let v = json(&["measure", "--lo", "1/2", "--hi", "1/1", "--K", "2000", "--tol", "5e-3"]);
    assert_eq!(v["pass"], true);
    assert!((v["lhs"].as_f64().unwrap() - std::f64::consts::LN_2).abs() < 1e-3);
    let out = oocf(&["measure", "--lo", "1/2", "--hi", "1/1", "--K", "2", "--tol", "1e-9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = oocf(&["measure", "--lo", "0/1", "--hi", "1/1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn input_errors_exit_1() {
    let out = oocf(&["expand", "--input", "(1+sqrt(2)"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("column"));
    assert_eq!(oocf(&["expand", "--input", "3/2"]).status.code(), Some(1));
    assert_eq!(oocf(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(oocf(&["--help"]).status.code(), Some(0));

    let out = Command::new(env!("CARGO_BIN_EXE_oocf"))
        .args(["best", "--input", SQRT2M1])
        .env("OODD_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_oocf"))
        .args(["best", "--input", SQRT2M1, "--qmax", "100000"])
        .env("OODD_THREADS", "1")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn text_format() {
    let out = oocf(&["verify", "keita", "--input", "8/11", "-n", "2", "--format", "text"]);
    let text = stdout(&out);
    assert!(text.contains("pass: true"));
    assert!(text.contains("degenerate: true"));
    assert!(!text.contains("schema"));
}

#[test]
fn ford_svg_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.svg");
    let b = dir.path().join("b.svg");
    let v = json(&["ford-svg", "--input", SQRT2M1, "-n", "4", "-o", a.to_str().unwrap()]);
    json(&["ford-svg", "--input", SQRT2M1, "-n", "4", "-o", b.to_str().unwrap()]);
    let (sa, sb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(sa, sb);
    // Reduced fractions in [0,1] with denominator ≤ 9: 1 + Σφ(q).
    assert_eq!(v["circles"], 29);
    assert_eq!(v["highlighted"], serde_json::json!(["1/3", "3/7", "7/17", "17/41"]));

    let svg = String::from_utf8(sa).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<circle").count(), 29 + 4);
    assert!(svg.contains("fill=\"#bdbdbd\"") && svg.contains("fill=\"#ffffff\""));
    let piped = stdout(&oocf(&["ford-svg", "--input", SQRT2M1, "-n", "4"]));
    assert_eq!(piped, svg);
}
