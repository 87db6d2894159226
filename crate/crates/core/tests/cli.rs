use std::process::{Command, Output};

fn nilcomm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcomm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn dmap_prints_the_image_first() {
    let out = nilcomm(&["dmap", "3,1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().next(), Some("(4,1)"));
}

#[test]
fn dmap_json() {
    let out = nilcomm(&["dmap", "4,2,1,1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["d"], serde_json::json!([6, 2]));
    assert_eq!(v["method"], "formula-r2");
    assert_eq!(v["checks"]["index"], true);
}

#[test]
fn dinv_lists_the_fiber() {
    let out = nilcomm(&["dinv", "6,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[0], "(6,2)");
    assert!(lines[6].starts_with("size 6"));
}

#[test]
fn check_pair_reports_rule() {
    let out = nilcomm(&["check", "pair", "6", "4,2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("forbidden"));
    assert!(text.contains("prop_ar"));
    let out = nilcomm(&["check", "pair", "3,1", "3,1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "unknown");
}

#[test]
fn constructions_verify() {
    for args in [
        vec!["construct", "squarezero", "4,2,1", "--rank", "2"],
        vec!["construct", "antidiagonal", "7", "5", "0", "2"],
        vec!["construct", "antidiagonal", "4", "2", "1", "1", "--b", "-2", "--c", "3/5"],
        vec!["construct", "lemma-eq2", "4"],
        vec!["construct", "lemma-odd", "5", "3", "2"],
        vec!["construct", "element", "4", "2", "K[0]=1", "L[1]=-1/2"],
    ] {
        let out = nilcomm(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(stdout(&out).contains("verified"), "{args:?}");
    }
}

#[test]
fn dump_matrix_round_trips() {
    let out = nilcomm(&["construct", "squarezero", "3,2", "--rank", "2", "--dump-matrix"]);
    let text = stdout(&out);
    let dump = &text[text.find("5 5\n").unwrap()..];
    let m = nilcomm::ExactMatrix::parse_dump(dump).unwrap();
    assert_eq!(m.rank(), 2);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(nilcomm(&["dmap", "3,x"]).status.code(), Some(2));
    assert_eq!(nilcomm(&["dmap", "20"]).status.code(), Some(2));
    assert_eq!(nilcomm(&["construct", "squarezero", "3", "--rank", "2"]).status.code(), Some(2));
    assert_eq!(nilcomm(&["explore", "q1", "--mu", "6", "--r", "2"]).status.code(), Some(2));
    assert_eq!(nilcomm(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn explore_matches() {
    let out = nilcomm(&["explore", "q1", "--mu", "8", "--r", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("size 12, conjectured 12: match"));
    assert_eq!(nilcomm(&["explore", "q2", "6,4,1"]).status.code(), Some(0));
}

#[test]
fn verify_subset() {
    let out = nilcomm(&["verify", "--suite", "1,2", "--max-n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches(" PASS ").count(), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["sample", "4,2,1", "--count", "3", "--json", "--dump-matrix"],
        vec!["dmap", "5,3,2,1", "--seed", "7"],
        vec!["dinv", "5,3"],
    ] {
        assert_eq!(nilcomm(&args).stdout, nilcomm(&args).stdout, "{args:?}");
    }
}
