use std::io::Write;
use std::process::{Command, Output, Stdio};

fn sepinv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sepinv")).args(args).output().expect("spawn sepinv")
}

fn sepinv_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_sepinv"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn sepinv");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn tmp_file(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("sepinv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn graphs_report_matches_builtin() {
    let out = sepinv(&["graphs", "--n", "4", "report", "--golden", "builtin"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let matrix = v["matrix"].as_array().unwrap();
    assert_eq!(matrix.len(), 10);
    assert!(matrix.iter().all(|row| row.as_array().unwrap().len() == 11));
    assert_eq!(v["beta_sep"]["value"], 4);
}

#[test]
fn construct_sym3_monomial() {
    let out = sepinv(&["construct", "--group", "sym:3", "--q", "2", "--method", "monomial"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["gamma"], 2);
    assert_eq!(v["size"], 2);
    assert_eq!(v["separating"], true);
}

#[test]
fn construct_golden_file_roundtrip() {
    let args = ["construct", "--group", "sym:3", "--q", "3", "--method", "norm"];
    let first = sepinv(&args);
    assert_eq!(first.status.code(), Some(0));
    let golden = tmp_file("sym3.json", std::str::from_utf8(&first.stdout).unwrap());
    let g = golden.to_str().unwrap();
    let mut with_golden = args.to_vec();
    with_golden.extend(["--golden", g]);
    assert_eq!(sepinv(&with_golden).status.code(), Some(0));
    let bad = tmp_file("bad.json", "{\"gamma\": 99}");
    let mut with_bad = args.to_vec();
    with_bad.extend(["--golden", bad.to_str().unwrap()]);
    assert_eq!(sepinv(&with_bad).status.code(), Some(1));
}

#[test]
fn multisym_verify_succeeds() {
    let out = sepinv(&["multisym", "--n", "4", "--m", "2", "verify"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["separating"], true);
    assert_eq!(v["minimal"], true);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let cases: [&[&str]; 4] = [
        &["graphs", "--n", "4", "report"],
        &["construct", "--group", "sym:3", "--q", "5", "--method", "reynolds"],
        &["orbits", "--group", "edge-sym:4", "--q", "2"],
        &["multisym", "--n", "5", "--m", "2", "verify"],
    ];
    for args in cases {
        let a = sepinv(args);
        let b = sepinv(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["construct", "--group", "sym:4", "--q", "2", "--method", "norm"];
    let one = Command::new(env!("CARGO_BIN_EXE_sepinv")).args(args).env("SEPINV_THREADS", "1").output().unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_sepinv")).args(args).env("SEPINV_THREADS", "4").output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_sepinv")).args(args).env("SEPINV_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(sepinv(&["no-such-verb"]).status.code(), Some(2));
    assert_eq!(sepinv(&["construct", "--group", "sym:3", "--q", "6"]).status.code(), Some(2));
    assert_eq!(sepinv(&["orbits", "--group", "nonsense", "--q", "2"]).status.code(), Some(2));
    assert_eq!(sepinv(&["graphs", "--n", "7", "report"]).status.code(), Some(2));
    let modular = sepinv(&["construct", "--group", "sym:3", "--q", "3", "--method", "reynolds"]);
    assert_eq!(modular.status.code(), Some(2));
}

#[test]
fn cap_errors_exit_3() {
    let out = sepinv(&["orbits", "--group", "sym:6", "--q", "3", "--cap-points", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
    let out = sepinv(&["orbits", "--group", "sym:6", "--q", "2", "--cap-order", "100"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_reports_failure_with_exit_1() {
    let good = tmp_file(
        "good.json",
        r#"{"spec": {"p": 2, "e": 1, "modulus": [0, 1]}, "n": 3, "invariants": ["x1 + x2 + x3", "x1*x2 + x1*x3 + x2*x3"]}"#,
    );
    let out = sepinv(&["verify", "--group", "sym:3", "--q", "2", "--set-file", good.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let weak = tmp_file(
        "weak.json",
        r#"{"spec": {"p": 2, "e": 1, "modulus": [0, 1]}, "n": 3, "invariants": ["x1 + x2 + x3"]}"#,
    );
    let out = sepinv(&["verify", "--group", "sym:3", "--q", "2", "--set-file", weak.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!json(&out)["unseparated_pairs"].as_array().unwrap().is_empty());
    let not_inv = tmp_file("notinv.json", r#"{"spec": {"p": 2, "e": 1, "modulus": [0, 1]}, "n": 3, "invariants": ["x1"]}"#);
    let out = sepinv(&["verify", "--group", "sym:3", "--q", "2", "--set-file", not_inv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fingerprint_from_stdin() {
    let path = sepinv_stdin(&["fingerprint", "--n", "4"], "1 2\n2 3\n");
    let star = sepinv_stdin(&["fingerprint", "--n", "4"], "# relabelled\n3 4\n1 4\n");
    assert_eq!(path.status.code(), Some(0));
    assert_eq!(path.stdout, star.stdout);
    let tri = sepinv_stdin(&["fingerprint", "--n", "4"], "1 2\n2 3\n1 3\n");
    assert_ne!(path.stdout, tri.stdout);
    assert_eq!(sepinv_stdin(&["fingerprint", "--n", "4"], "1 5\n").status.code(), Some(2));
}

#[test]
fn f3_remark_and_multisym_subcommands() {
    assert_eq!(sepinv(&["f3-remark", "--n", "8"]).status.code(), Some(0));
    let v = json(&sepinv(&["f3-remark", "--f4"]));
    assert_eq!(v["gamma"], 3);
    let v = json(&sepinv(&["multisym", "--n", "3", "--m", "2", "key-lemma"]));
    assert_eq!(v["equivalent"], true);
    let out = sepinv(&["multisym", "--n", "4", "--m", "2", "conditions", "--tau", "0,1,0,3", "--theta", "0,0,0,4"]);
    assert_eq!(out.status.code(), Some(0));
    let out = sepinv(&["multisym", "--n", "4", "--m", "1", "corollary"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn field_operations() {
    let v = json(&sepinv(&["field", "--q", "9", "--op", "inv", "--a", "4"]));
    let r = v["result"].as_u64().unwrap();
    let back = json(&sepinv(&["field", "--q", "9", "--op", "mul", "--a", "4", "--b", &r.to_string()]));
    assert_eq!(back["result"], 1);
    assert_eq!(sepinv(&["field", "--q", "9", "--op", "inv", "--a", "0"]).status.code(), Some(2));
}
