use std::process::{Command, Output};

use serde_json::Value;

fn trijac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trijac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn compute_examples() {
    let o = trijac(&["compute", "--seq", "K3", "--n", "6"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "66"));
    let o = trijac(&["compute", "--seq", "K3", "--n", "-1"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "-1/2"));
    let o = trijac(&["compute", "--seq", "J3", "--n", "0", "--engine", "binet"]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "0"));
    for engine in ["iter", "closed", "matpow", "binet"] {
        let o = trijac(&["compute", "--seq", "JL3", "--n", "40", "--engine", engine]);
        assert_eq!(stdout(&o).trim(), "1256584717457", "{engine}");
    }
}

#[test]
fn compute_usage_errors() {
    assert_eq!(code(&trijac(&["compute", "--seq", "J3", "--n", "-1"])), 2);
    assert_eq!(code(&trijac(&["compute", "--seq", "X3", "--n", "1"])), 2);
    assert_eq!(
        code(&trijac(&[
            "compute", "--seq", "K3", "--n", "1", "--engine", "fast"
        ])),
        2
    );
    assert_eq!(code(&trijac(&["compute", "--seq", "K3"])), 2);
    assert_eq!(code(&trijac(&["frobnicate"])), 2);
}

#[test]
fn gf_examples() {
    let o = trijac(&["gf", "--seq", "K3", "--terms", "7"]);
    assert_eq!(stdout(&o).trim(), "3 1 3 10 15 31 66");
    assert_eq!(
        stdout(&trijac(&["gf", "--seq", "J3", "--terms", "3"])).trim(),
        "0 1 1"
    );
    assert_eq!(
        stdout(&trijac(&["gf", "--seq", "JL3", "--terms", "3"])).trim(),
        "2 1 5"
    );
    assert_eq!(code(&trijac(&["gf", "--seq", "K3", "--terms", "0"])), 2);

    let v: Value = serde_json::from_str(&stdout(&trijac(&[
        "gf", "--seq", "K3", "--terms", "4", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(v["numerator"].to_string(), "[3,-2,-1]");
    assert_eq!(v["denominator"].to_string(), "[1,-1,-1,-2]");
    assert_eq!(v["coefficients"].to_string(), "[3,1,3,10]");
}

#[test]
fn range_formats() {
    let o = trijac(&[
        "range", "--seq", "K3", "--from", "0", "--to", "6", "--format", "csv",
    ]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("seq,n,value"));
    let values: Vec<&str> = lines.map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(values.join(","), "3,1,3,10,15,31,66");

    let o = trijac(&[
        "range", "--seq", "JL3", "--from", "0", "--to", "2", "--engine", "matpow",
    ]);
    assert_eq!(stdout(&o).trim(), "2 1 5");

    let o = trijac(&[
        "range", "--seq", "J3", "--from", "0", "--to", "2", "--engine", "closed", "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["values"].to_string(), "[0,1,1]");

    assert_eq!(
        code(&trijac(&[
            "range", "--seq", "K3", "--from", "5", "--to", "4"
        ])),
        2
    );
}

#[test]
fn verify_exit_codes_and_vacuous() {
    let o = trijac(&["verify", "--id", "E5", "--n-max", "2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS (vacuous) E5"));

    let o = trijac(&[
        "verify", "--id", "CASSINI", "--n-max", "50", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(v[0]["checked"], 50);

    assert_eq!(code(&trijac(&["verify", "--id", "NOPE"])), 2);
    assert_eq!(code(&trijac(&["verify"])), 2);
    assert_eq!(code(&trijac(&["verify", "--id", "E4", "--all"])), 2);
}

#[test]
fn verify_all_plain_and_csv() {
    let o = trijac(&["verify", "--all", "--n-max", "60", "--pair-budget", "500"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS ")).count(), 30);
    assert!(text.ends_with("30 of 30 identities pass\n"));

    let o = trijac(&[
        "verify", "--id", "E4,PP4", "--n-max", "10", "--format", "csv",
    ]);
    assert_eq!(
        stdout(&o),
        "identity,checked,skipped,vacuous,failures,status\nE4,11,0,false,0,pass\nPP4,121,0,false,0,pass\n"
    );
}

#[test]
fn injected_fault_writes_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = trijac(&[
        "verify",
        "--id",
        "T3",
        "--n-max",
        "4",
        "--format",
        "json",
        "--inject-fault",
        "T3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("0 of 1 identities pass"));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v[0]["status"], "fail");
    let first = &v[0]["failures"][0];
    assert_eq!(first["indices"].to_string(), "[0]");
    assert_eq!(first["lhs"], "2/1");
    assert_eq!(first["rhs"], "3/1");
}

#[test]
fn verify_json_roundtrips() {
    let o = trijac(&[
        "verify",
        "--id",
        "N2,CATALAN",
        "--n-max",
        "8",
        "--format",
        "json",
        "--inject-fault",
        "N2",
    ]);
    let text = stdout(&o);
    let reports: Vec<trijac::IdentityCheckReport> = serde_json::from_str(&text).unwrap();
    assert_eq!(reports.len(), 2);
    assert!(!reports[0].passed() && reports[1].passed());
    let again = serde_json::to_string_pretty(&reports).unwrap() + "\n";
    assert_eq!(again, text);
}

#[test]
fn bench_examples() {
    let o = trijac(&[
        "bench",
        "--seq",
        "K3",
        "--n",
        "100000",
        "--engines",
        "closed,matpow",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("values agree"));

    let o = trijac(&[
        "bench",
        "--seq",
        "K3",
        "--n",
        "0",
        "--engines",
        "iter,closed,matpow,binet",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("values agree: 3"));

    let o = trijac(&[
        "bench",
        "--seq",
        "J3",
        "--n",
        "64",
        "--engines",
        "iter,closed",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["agree"], true);
    assert_eq!(v["results"].as_array().unwrap().len(), 2);

    let o = trijac(&[
        "bench",
        "--seq",
        "K3",
        "--n",
        "1000",
        "--engines",
        "iter",
        "--iter-cap",
        "999",
    ]);
    assert_eq!(code(&o), 2);
}
