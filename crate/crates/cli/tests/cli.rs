use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn eggert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eggert"))
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

fn lines(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("eggert-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn specs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

#[test]
fn verify_paper_passes_and_reports_json() {
    let o = eggert(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("note:"));

    let o = eggert(&["verify-paper", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["command"], "verify-paper");
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["config_hash"].as_str().unwrap().len(), 64);
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["id"] == "5.6" && c["note"].is_string()));
}

#[test]
fn verify_paper_only() {
    let o = eggert(&["verify-paper", "--json", "--only", "2.3"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["id"], "2.3");

    let o = eggert(&["verify-paper", "--only", "9.9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("unknown id"));
}

#[test]
fn search_two_three_single_record() {
    let o = eggert(&[
        "search",
        "--gens",
        "2,3",
        "--bound-max",
        "10",
        "--scheme",
        "none",
        "--exponent",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = lines(&o);
    assert_eq!(out.len(), 2);
    assert_eq!(out[0]["deficit"], -1);
    assert_eq!(out[1]["summary"]["total"], 1);
}

#[test]
fn search_four_five_identify_includes_thirteen() {
    let o = eggert(&[
        "search",
        "--gens",
        "4,5",
        "--bound-max",
        "30",
        "--exponent",
        "2",
        "--scheme",
        "identify",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = lines(&o);
    let rec = out
        .iter()
        .find(|r| r["provenance"]["params"] == serde_json::json!([13, 14]))
        .expect("i = 13 record");
    assert_eq!(rec["deficit"], 0);
    assert_eq!(out.last().unwrap()["summary"]["max_deficit"], 0);
}

#[test]
fn search_top_and_hash() {
    let args = [
        "search",
        "--gens",
        "4,5",
        "--bound-max",
        "24",
        "--scheme",
        "identify,collapse",
        "--top",
        "3",
    ];
    let a = eggert(&args);
    let out = lines(&a);
    assert_eq!(out.len(), 4);
    let mut more = args.to_vec();
    more.extend(["--workers", "3"]);
    let b = eggert(&more);
    assert_eq!(
        a.stdout, b.stdout,
        "worker count leaves output and hash unchanged"
    );
    let c = eggert(&[
        "search",
        "--gens",
        "4,5",
        "--bound-max",
        "24",
        "--scheme",
        "identify",
        "--top",
        "3",
    ]);
    assert_ne!(
        lines(&c).last().unwrap()["config_hash"],
        out.last().unwrap()["config_hash"]
    );
}

#[test]
fn search_rejects_bad_flags() {
    for args in [
        vec!["search", "--bound-max", "10"],
        vec!["search", "--gens", "2,x", "--bound-max", "10"],
        vec![
            "search",
            "--gens",
            "2,3",
            "--bound-max",
            "10",
            "--scheme",
            "bogus",
        ],
        vec![
            "search",
            "--gens",
            "2,3",
            "--pairs-max",
            "5",
            "--bound-max",
            "10",
        ],
        vec![
            "search",
            "--gens",
            "2,3",
            "--bound-min",
            "12",
            "--bound-max",
            "10",
        ],
        vec![
            "search",
            "--gens",
            "2,3",
            "--bound-max",
            "10",
            "--exponent",
            "0",
        ],
    ] {
        let o = eggert(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn search_with_algebra_relators_and_cross_check() {
    let o = eggert(&[
        "search",
        "--gens",
        "2,3",
        "--bound-max",
        "10",
        "--scheme",
        "identify",
        "--cross-check",
        "--relator",
        "1,1",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = lines(&o);
    assert_eq!(out.last().unwrap()["summary"]["cross_check_failures"], 0);
    assert!(out.iter().any(|r| r.get("algebra").is_some()));
}

#[test]
fn identity_command() {
    let o = eggert(&["identity", "--n", "3", "--p", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], true);

    let o = eggert(&["identity", "--n", "5", "--p", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("must exceed"), "{}", stderr(&o));

    let o = eggert(&["identity", "--n", "2", "--p", "4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn report_semigroup_and_algebra_specs() {
    let o = eggert(&[
        "report",
        "--spec",
        specs_dir().join("four_five.json").to_str().unwrap(),
        "--exponent",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["card_s"], 12);
    assert_eq!(v["card_image"], 6);
    assert_eq!(v["deficit"], 0);
    assert_eq!(v["algebra"]["deficit"], 0);

    let o = eggert(&[
        "report",
        "--spec",
        specs_dir().join("four_five_algebra.json").to_str().unwrap(),
        "--exponent",
        "2",
    ]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (v["dim"].as_u64(), v["image_dim"].as_u64()),
        (Some(12), Some(6))
    );
}

#[test]
fn dump_spec_round_trips() {
    let docs = [
        r#"{"kind":"numerical","generators":[2,5],"bound":14,"relations":[{"identify":[11,12]},{"collapse":10}]}"#,
        r#"{"kind":"cyclic","bound":5}"#,
        r#"{"kind":"group_product","of":{"kind":"cyclic","bound":5},"group_order":3}"#,
        r#"{"kind":"example_4_3","n":3,"p":2}"#,
        r#"{"kind":"contracted","semigroup":{"kind":"product","left":{"kind":"cyclic","bound":2},"right":{"kind":"cyclic","bound":3}},"p":3}"#,
        r#"{"kind":"truncated_poly","p":3,"vars":2,"degree":4}"#,
        r#"{"kind":"quotient","of":{"kind":"truncated_poly","p":2,"vars":1,"degree":8},"relators":[[[3,1],["x^4",1]]]}"#,
        r#"{"kind":"tensor","left":{"kind":"truncated_poly","p":2,"vars":1,"degree":4},"right":{"kind":"truncated_poly","p":2,"vars":1,"degree":2}}"#,
        r#"{"kind":"example_2_4","p":5}"#,
        r#"{"kind":"forbidden_words","p":2,"d":2,"degree":5}"#,
    ];
    for (k, doc) in docs.iter().enumerate() {
        let path = scratch(&format!("rt{k}.json"), doc);
        let first = eggert(&["report", "--spec", path.to_str().unwrap(), "--dump-spec"]);
        assert_eq!(first.status.code(), Some(0), "{doc}: {}", stderr(&first));
        let dumped = scratch(&format!("rt{k}-dump.json"), &stdout(&first));
        let second = eggert(&["report", "--spec", dumped.to_str().unwrap(), "--dump-spec"]);
        assert_eq!(first.stdout, second.stdout, "{doc}");
    }
}

#[test]
fn spec_errors_carry_json_pointers() {
    let path = scratch(
        "bad-gen.json",
        r#"{"kind":"contracted","semigroup":{"kind":"numerical","generators":[4,"x"],"bound":3},"p":2}"#,
    );
    let o = eggert(&[
        "report",
        "--spec",
        path.to_str().unwrap(),
        "--exponent",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(65));
    assert!(
        stderr(&o).contains("/semigroup/generators/1"),
        "{}",
        stderr(&o)
    );

    let path = scratch(
        "bad-prime.json",
        r#"{"kind":"truncated_poly","p":6,"vars":1,"degree":3}"#,
    );
    let o = eggert(&[
        "report",
        "--spec",
        path.to_str().unwrap(),
        "--exponent",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(65));
    assert!(stderr(&o).contains("/p"), "{}", stderr(&o));

    let path = scratch("not-json.json", "{ nope");
    let o = eggert(&[
        "report",
        "--spec",
        path.to_str().unwrap(),
        "--exponent",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(65));
}

#[test]
fn missing_input_exits_66() {
    let o = eggert(&[
        "report",
        "--spec",
        "/nonexistent/spec.json",
        "--exponent",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(66));
}

#[test]
fn probe_reports_without_asserting() {
    let o = eggert(&[
        "probe",
        "--spec",
        specs_dir().join("probe_v.json").to_str().unwrap(),
        "--question",
        "v",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mode"], "v");
    assert_eq!(v["dim_subspace"], 3);

    let o = eggert(&[
        "probe",
        "--spec",
        specs_dir().join("probe_v.json").to_str().unwrap(),
        "--question",
        "w",
        "--cap",
        "1000",
    ]);
    assert_eq!(o.status.code(), Some(65));
    assert!(stderr(&o).contains("cap"));
}
