mod common;

use std::process::Command;

use common::cli;
use serde_json::Value;

fn binary(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_horadam")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(out: &str) -> Value {
    serde_json::from_str(out).unwrap()
}

#[test]
fn process_exit_codes() {
    assert_eq!(
        binary(&["eval", "--seq", "fibonacci", "-n", "8"]),
        (0, "21\n".into(), String::new())
    );
    let (code, out, _) = binary(&["check", "--expr", "F[n+1]=F[n]", "--grid", "n=0..3"]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["counterexamples"][0]["bindings"]["n"], 0);
    let (code, out, err) = binary(&["check", "--expr", "F[n"]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.starts_with("error:"), "{err}");
    assert_eq!(binary(&["frobnicate"]).0, 2);
    assert_eq!(binary(&[]).0, 2);
    assert_eq!(binary(&["--version"]).0, 0);
}

#[test]
fn table_reproduces_the_value_table() {
    let (code, out, _) = cli(&["table", "--all", "--from", "-5", "--to", "8", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines[0],
        "n,fibonacci,lucas,pell,pell-lucas,jacobsthal,jacobsthal-lucas"
    );
    assert_eq!(lines.len(), 15);
    assert_eq!(lines[1], "-5,5,-11,29,-82,11/32,-31/32");
    assert_eq!(lines[14], "8,21,47,408,1154,85,257");
    assert_eq!(
        cli(&["table", "--seq", "lucas", "--from", "0", "--to", "0"]).1,
        "n,lucas\n0,2\n"
    );
    assert_eq!(
        cli(&["table", "--seq", "jacobsthal-lucas", "--from", "-4", "--to", "-4"]).1,
        "n,jacobsthal-lucas\n-4,17/16\n"
    );
}

#[test]
fn table_formats() {
    let (_, out, _) = cli(&[
        "table", "--seq", "pell", "--from", "-1", "--to", "1", "--format", "json",
    ]);
    let v = json(&out);
    assert_eq!(v[0]["n"], -1);
    assert_eq!(v[0]["pell"], "1");
    let (_, out, _) = cli(&[
        "table", "--p", "1", "--q", "1/2", "--g0", "0", "--g1", "1", "--from", "2", "--to", "3", "--format", "text",
    ]);
    assert_eq!(out, "n    G\n2    1\n3  3/2\n");
}

#[test]
fn verify_examples() {
    let (code, out, _) = cli(&["verify", "--identity", "theorem1", "--g", "fibonacci", "--h", "lucas"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["cases_total"], 30625);
    assert_eq!(v["counterexamples"], Value::Array(vec![]));

    let (code, out, _) = cli(&[
        "verify",
        "--identity",
        "sum-ordinary:1",
        "--grid",
        "n=0..1,m=0..1,a=0..1,b=0..1,c=0..1,d=0..1,k=0..2",
    ]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert!(v["cases_skipped_precondition"].as_u64().unwrap() >= 1);
    assert_eq!(
        v["cases_total"].as_u64().unwrap(),
        v["cases_checked"].as_u64().unwrap() + v["cases_skipped_precondition"].as_u64().unwrap()
    );

    let (code, _, _) = cli(&[
        "verify",
        "--identity",
        "lemma2:3",
        "--g",
        "2,1,0,1",
        "--rel",
        "2,1,1,2",
        "--grid",
        "n=-2..2,k=0..4",
    ]);
    assert_eq!(code, 0);
    // Fibonacci numbers also satisfy F_n = 3F_{n-2} - F_{n-4}
    assert_eq!(cli(&["verify", "--identity", "lemma3:1", "--rel", "3,-1,2,4"]).0, 0);
    // a relation the sequence does not satisfy is a precondition failure
    assert_eq!(cli(&["verify", "--identity", "lemma1", "--rel", "2,1,1,2"]).0, 2);
    assert_eq!(
        cli(&["verify", "--identity", "theorem1", "--g", "fibonacci", "--h", "pell"]).0,
        2
    );
    assert_eq!(cli(&["verify", "--identity", "corollary", "--grid", "n=0..1"]).0, 0);
    assert_eq!(cli(&["verify", "--identity", "corollary", "--grid", "z=0..1"]).0, 2);
}

#[test]
fn catalog_examples() {
    let (code, out, _) = cli(&["catalog", "list"]);
    assert_eq!(code, 0);
    let ids: Vec<&str> = out.lines().map(|l| l.split('\t').next().unwrap()).collect();
    assert!(ids.len() >= 40);
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert!(ids.contains(&"fib.catalan") && ids.contains(&"jac.sum.binomial.3"));

    let (code, out, _) = cli(&["catalog", "run", "fib.catalan", "--grid", "n=0..8,m=0..8"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["cases_total"], 81);
    let (code, _, err) = cli(&["catalog", "run", "nosuch.id"]);
    assert_eq!(code, 2);
    assert!(err.contains("nosuch.id"));
    assert_eq!(
        cli(&[
            "catalog",
            "run",
            "jac.master",
            "--h0",
            "3",
            "--h1",
            "5",
            "--grid",
            "n=-3..3,m=-3..3,a=-2..2,b=-2..2"
        ])
        .0,
        0
    );
    // fib.catalan has no sequence slot
    assert_eq!(cli(&["catalog", "run", "fib.catalan", "--h0", "1", "--h1", "1"]).0, 2);
    assert_eq!(cli(&["catalog", "run", "fib.catalan", "--grid", "k=0..2"]).0, 2);
}

#[test]
fn check_examples() {
    let catalan = "F[n-m]*F[n+m] = F[n]^(2) + (-1)^(n+m+1)*F[m]^(2)";
    let (code, out, _) = cli(&["check", "--expr", catalan, "--grid", "n=0..6,m=0..6"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["cases_total"], 49);
    let (code, out, _) = cli(&["check", "--expr", "F[n+1]=F[n]", "--grid", "n=0..3", "--format", "csv"]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().nth(1), Some("0,1,0"));
    assert_eq!(cli(&["check", "--expr", "X[n] = 0", "--grid", "n=0..1"]).0, 2);
    assert_eq!(cli(&["check", "--expr", catalan, "--grid", "n=0..1"]).0, 2);
    assert_eq!(cli(&["check", "--expr", "F[n]=F[n]", "--grid", "n=3..1"]).0, 0);
}

#[test]
fn files_in_and_out() {
    let dir = std::env::temp_dir().join(format!("horadam-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("vajda.txt");
    std::fs::write(
        &input,
        "# Vajda at m = 1\nlet H = (1, 1, 3, -5)\nH[n+1] = F[0]*H[n] + F[1]*H[n+1]\n",
    )
    .unwrap();
    let report = dir.join("report.json");
    let (code, out, _) = binary(&[
        "check",
        "--file",
        input.to_str().unwrap(),
        "--grid",
        "n=-5..5",
        "--output",
        report.to_str().unwrap(),
    ]);
    assert_eq!((code, out.as_str()), (0, ""));
    let first = std::fs::read(&report).unwrap();
    assert_eq!(json(std::str::from_utf8(&first).unwrap())["cases_checked"], 11);
    binary(&[
        "check",
        "--file",
        input.to_str().unwrap(),
        "--grid",
        "n=-5..5",
        "--output",
        report.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read(&report).unwrap(), first);
    assert_eq!(binary(&["check", "--file", dir.join("missing").to_str().unwrap()]).0, 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &[
            "verify",
            "--identity",
            "sum-binomial:3",
            "--g",
            "jacobsthal",
            "--h",
            "jacobsthal-lucas",
            "--grid",
            "n=0..1,m=0..1,a=0..1,b=0..1,c=0..1,d=0..1,k=0..3",
            "--format",
            "text",
        ][..],
        &["catalog", "run", "pell.halton", "--format", "csv"][..],
        &["check", "--expr", "F[2*n] = F[n]", "--grid", "n=-3..3"][..],
    ] {
        assert_eq!(binary(args), binary(args));
    }
}

#[test]
fn bad_input_never_panics() {
    for args in [
        &["eval", "--seq", "fibonacci", "-n", "99999999999999999999"][..],
        &["eval", "--p", "1/0", "--q", "1", "--g0", "0", "--g1", "1", "-n", "1"][..],
        &["eval", "--p", "1", "--q", "1", "--g0", "0", "--g1", "0", "-n", "1"][..],
        &["table", "--seq", "lucas", "--from", "0"][..],
        &["verify", "--identity", "sum-ordinary:4"][..],
        &["verify", "--identity", "theorem1", "--g", "1,2,3"][..],
        &["verify", "--identity", "lemma1", "--rel", "1,1,2,2"][..],
        &["catalog", "run", "fib.catalan", "--grid", "n=0..a"][..],
        &["check", "--expr", "F[n] = F[n] = F[n]"][..],
        &["check", "--expr", "F[F[n]] = 0", "--grid", "n=0..1"][..],
        &["check", "--expr", "sum(n, 0, 2, n) = 3", "--grid", "n=0..1"][..],
        &["check", "--expr", "F[n]^(0-1) = 1", "--grid", "n=0"][..],
    ] {
        let (code, out, err) = binary(args);
        assert_eq!(code, 2, "{args:?}: {out}");
        assert!(err.contains("error"), "{args:?}: {err}");
        assert!(!err.contains("panicked"), "{args:?}: {err}");
    }
}
