use std::collections::BTreeMap;
use std::process::{Command, Output};

use cyclofact::report::{factors_from_json, ReportJson};
use cyclofact::{Field, FieldCtx, PolyRing};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclofact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Splits `(a)(b)^2...` into factor strings with multiplicities.
fn text_factors(line: &str) -> BTreeMap<String, u32> {
    let mut out = BTreeMap::new();
    let mut rest = line.trim();
    while let Some(stripped) = rest.strip_prefix('(') {
        let close = stripped.find(')').unwrap();
        let body = stripped[..close].to_string();
        rest = &stripped[close + 1..];
        let mut mult = 1;
        if let Some(tail) = rest.strip_prefix('^') {
            let end = tail.find('(').unwrap_or(tail.len());
            mult = tail[..end].parse().unwrap();
            rest = &tail[end..];
        }
        *out.entry(body).or_insert(0) += mult;
    }
    assert!(rest.is_empty(), "unparsed tail {rest:?}");
    out
}

#[test]
fn x240_over_f59_json() {
    let o = run(&["factor", "--q", "59", "--d", "15", "--n", "4", "--verify", "--format", "json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let report: ReportJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report.factors.len(), 91);
    assert_eq!(report.predicted_count, 91);
    assert_eq!(report.degree, 240);
    assert!(report.checks.all());
    assert!(report.diagnostics.is_empty());

    let ctx = FieldCtx::new(59, 1).unwrap();
    let ring = PolyRing::new(&ctx);
    let list = factors_from_json(&ctx, &report.factors).unwrap();
    assert_eq!(ring.product(&list), ring.binomial(240, ctx.one()));
}

#[test]
fn phi8_of_x5_over_f29() {
    let o = run(&["phi", "--q", "29", "--k", "3", "--d", "5"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let got = text_factors(&stdout(&o));
    assert_eq!(got.len(), 10);
    for f in ["x^2 + 12", "x^2 - 12", "x^2 - 6x - 12", "x^2 + 14x + 12", "x^2 - 3x + 12"] {
        assert!(got.contains_key(f), "missing {f}");
    }
}

#[test]
fn smallest_case() {
    let o = run(&["factor", "--q", "7", "--d", "1", "--n", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "(x - 1)(x + 1)");
}

#[test]
fn bad_d_is_rejected_with_usage() {
    for (d, msg) in [
        ("6", "d must be odd"),
        ("7", "d must be an odd divisor of q+1"),
        ("29", "d must be coprime to q"),
        ("0", "d must be positive"),
    ] {
        let o = run(&["factor", "--q", "29", "--d", d, "--n", "3"]);
        assert_eq!(o.status.code(), Some(2), "d = {d}");
        let err = stderr(&o);
        assert!(err.contains(msg), "d = {d}: {err}");
        assert!(err.contains("Usage:"), "{err}");
        assert!(stdout(&o).is_empty());
    }
}

#[test]
fn bad_field_is_rejected() {
    for q in ["12", "8", "1"] {
        let o = run(&["factor", "--q", q, "--d", "1", "--n", "2"]);
        assert_eq!(o.status.code(), Some(2), "q = {q}");
        assert!(stderr(&o).contains("power of an odd prime"));
    }
    let o = run(&["factor", "--q", "9", "--e", "1", "--d", "5", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn text_and_json_agree() {
    let args = ["factor", "--q", "25", "--d", "13", "--n", "3"];
    let text = run(&args);
    assert!(text.status.success());
    let text_count: u32 = text_factors(&stdout(&text)).values().sum();

    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json = run(&json_args);
    let report: ReportJson = serde_json::from_str(&stdout(&json)).unwrap();
    let json_count: u32 = report.factors.iter().map(|f| f.multiplicity).sum();
    assert_eq!(text_count, json_count);
    assert_eq!(report.e, 2);
    // Unverified runs report the verification-only flags as false.
    assert!(report.checks.product_ok && report.checks.count_ok);
    assert!(!report.checks.oracle_match);
}

#[test]
fn explicit_gamma_and_nonsquare() {
    let o = run(&[
        "factor", "--q", "29", "--d", "15", "--n", "3", "--nonsquare", "3", "--gamma", "2,1", "--verify",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let mut lines = out.lines();
    let factors = text_factors(lines.next().unwrap());
    assert_eq!(factors.values().sum::<u32>(), 62);
    // δ_1 = 4 gives x^2 - 4x + 1.
    assert!(factors.contains_key("x^2 - 4x + 1"));
    assert!(lines.next().unwrap().contains("oracle_match=true"));

    let o = run(&["factor", "--q", "29", "--d", "15", "--n", "3", "--gamma", "1,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn oracle_subcommand() {
    let o = run(&["oracle", "--q", "5", "--poly", "-1,0,0,0,1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["factors"].as_array().unwrap().len(), 4);
    assert_eq!(v["input"], serde_json::json!([4, 0, 0, 0, 1]));

    let o = run(&["oracle", "--q", "7", "--poly", "1,0,1"]);
    assert_eq!(stdout(&o).trim(), "(x^2 + 1)");

    let o = run(&["oracle", "--q", "7", "--poly", "1,x"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(!stdout(&o).contains("FAIL"));
}
